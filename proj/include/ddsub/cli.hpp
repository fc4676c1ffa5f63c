#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ddsub/counting.hpp"
#include "ddsub/experiment.hpp"
#include "ddsub/extraction.hpp"
#include "ddsub/generators.hpp"
#include "ddsub/point_file.hpp"

namespace ddsub {

// Exit codes: 0 success, 1 domain error (bad file contents, failed
// verification, refused input), 2 usage error (bad flags or arguments).
inline constexpr int exit_ok = 0;
inline constexpr int exit_domain_error = 1;
inline constexpr int exit_usage_error = 2;

namespace detail {

// Carries a usage problem detected after flag parsing (flag combinations,
// malformed flag payloads) out to the exit-code mapping.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline GenShape parse_shape(const std::string& name) {
  if (name == "grid") return GenShape::grid;
  if (name == "circle") return GenShape::circle;
  if (name == "random-plane") return GenShape::random_plane;
  if (name == "random-sphere") return GenShape::random_sphere;
  throw UsageError("unknown shape '" + name + "'");
}

inline DeletionPolicy parse_policy(const std::string& name) {
  if (name == "naive") return DeletionPolicy::naive;
  if (name == "greedy-conflict") return DeletionPolicy::greedy_conflict;
  throw UsageError("unknown policy '" + name + "'");
}

inline Rational parse_probability_flag(const std::string& text, const char* flag) {
  const auto value = parse_rational_or_decimal(text);
  if (!value) {
    throw UsageError(std::string(flag) + " wants a rational or decimal, got '" +
                     text + "'");
  }
  return *value;
}

inline std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> indices;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t value = 0;
    const auto [end, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size()) {
      throw UsageError("--subset wants comma-separated indices, got '" + token + "'");
    }
    indices.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return indices;
}

// "A:B" or "A:B:STEP" -> {A, A+STEP, ..., <= B}.
inline std::vector<std::size_t> parse_range(const std::string& text) {
  std::vector<std::uint64_t> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t colon = text.find(':', pos);
    const std::string token =
        text.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos);
    std::uint64_t value = 0;
    const auto [end, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size()) {
      throw UsageError("--range wants A:B or A:B:STEP, got '" + text + "'");
    }
    parts.push_back(value);
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw UsageError("--range wants A:B or A:B:STEP, got '" + text + "'");
  }
  const std::uint64_t from = parts[0];
  const std::uint64_t to = parts[1];
  const std::uint64_t step = parts.size() == 3 ? parts[2] : 1;
  if (from < 1 || to < from || step < 1) {
    throw UsageError("--range wants 1 <= A <= B and STEP >= 1");
  }
  std::vector<std::size_t> values;
  for (std::uint64_t v = from; v <= to; v += step) {
    values.push_back(static_cast<std::size_t>(v));
  }
  return values;
}

inline std::string render_rational(const Rational& value, bool exact) {
  return exact ? format_rational(value) : format_decimal(value);
}

inline std::string render_key(const DistanceKey& key, bool exact) {
  if (key.kind() == DistanceKey::Kind::chord || exact) return key.to_string();
  return format_decimal(key.squared());
}

inline void emit_or_print(const std::string& content, const std::string& out_path,
                          std::ostream& out) {
  if (out_path.empty()) {
    out << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

inline std::string trial_csv(const std::vector<TrialRecord>& trials) {
  std::ostringstream csv;
  csv << "trial,sampled_size,t_q,f_q,final_size,certificate_ok\n";
  for (std::size_t k = 0; k < trials.size(); ++k) {
    const auto& trial = trials[k];
    csv << k << ',' << trial.sampled_size << ',' << trial.t_q << ',' << trial.f_q
        << ',' << trial.final_size << ','
        << (trial.certificate_ok ? "true" : "false") << '\n';
  }
  return std::move(csv).str();
}

}  // namespace detail

// Parses and runs one command. `args` excludes the program name. All normal
// output goes to `out`, diagnostics to `err`; nothing touches the global
// streams, so the function is embeddable and testable.
inline int run_command(std::vector<std::string> args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Distinct-distance subsets: exact counting, extraction, and "
               "experiments over exact-rational point sets"};
  app.name("ddsub");
  app.require_subcommand(1);

  const std::vector<std::string> shape_names{"grid", "circle", "random-plane",
                                             "random-sphere"};
  const std::vector<std::string> policy_names{"naive", "greedy-conflict"};

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a point set");
  std::string gen_shape;
  std::uint64_t gen_m = 0;
  std::uint64_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  std::uint32_t gen_den_bound = 1000;
  std::string gen_out;
  gen->add_option("--shape", gen_shape, "grid | circle | random-plane | random-sphere")
      ->required()
      ->check(CLI::IsMember(shape_names));
  gen->add_option("--m", gen_m, "grid side length")->check(CLI::PositiveNumber);
  gen->add_option("--n", gen_n, "point count")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "PRNG seed (random shapes)");
  gen->add_option("--den-bound", gen_den_bound,
                  "denominator bound (random shapes)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "output file (default: stdout)");

  // count
  auto* count = app.add_subcommand("count", "Count bad configurations of a point set");
  std::string count_file;
  bool count_exact = false;
  count->add_option("file", count_file, "point set file")->required();
  count->add_flag("--exact", count_exact, "print rationals as num/den");

  // extract
  auto* extract = app.add_subcommand(
      "extract", "Random-sampling extraction of a distinct-distance subset");
  std::string extract_file;
  Count extract_trials = 100;
  std::uint64_t extract_seed = 0;
  std::string extract_q_scale = "1";
  std::string extract_q;
  std::string extract_policy = "naive";
  int extract_workers = 1;
  std::string extract_out;
  bool extract_exact = false;
  extract->add_option("file", extract_file, "point set file")->required();
  extract->add_option("--trials", extract_trials, "number of independent trials")
      ->check(CLI::PositiveNumber);
  extract->add_option("--seed", extract_seed, "PRNG seed");
  extract->add_option("--q-scale", extract_q_scale,
                      "scale on the default sampling probability");
  extract->add_option("--q", extract_q, "fixed sampling probability in [0,1]");
  extract->add_option("--policy", extract_policy, "naive | greedy-conflict")
      ->check(CLI::IsMember(policy_names));
  extract->add_option("--workers", extract_workers, "parallel trial workers")
      ->check(CLI::PositiveNumber);
  extract->add_option("--out", extract_out, "write the per-trial CSV here");
  extract->add_flag("--exact", extract_exact, "print rationals as num/den");

  // exact
  auto* exact_cmd = app.add_subcommand(
      "exact", "Exact maximum distinct-distance subset (branch and bound)");
  std::string exact_file;
  std::int64_t exact_budget = 50'000'000;
  bool exact_force = false;
  exact_cmd->add_option("file", exact_file, "point set file")->required();
  exact_cmd->add_option("--budget", exact_budget, "search node budget")
      ->check(CLI::PositiveNumber);
  exact_cmd->add_flag("--force", exact_force, "allow N > 24");

  // verify
  auto* verify = app.add_subcommand("verify", "Check a subset for distinct distances");
  std::string verify_file;
  std::string verify_subset;
  verify->add_option("file", verify_file, "point set file")->required();
  verify->add_option("--subset", verify_subset, "comma-separated point indices")
      ->required();

  // experiment
  auto* experiment = app.add_subcommand(
      "experiment", "Run a generator/extraction sweep and write a CSV");
  std::string exp_shape;
  std::string exp_range;
  std::uint64_t exp_seed = 0;
  std::uint32_t exp_den_bound = 1000;
  Count exp_trials = 100;
  std::string exp_q_scale = "1";
  std::string exp_q;
  std::string exp_policy = "naive";
  int exp_workers = 1;
  bool exp_timing = false;
  bool exp_exact = false;
  std::string exp_out;
  experiment
      ->add_option("--shape", exp_shape, "grid | circle | random-plane | random-sphere")
      ->required()
      ->check(CLI::IsMember(shape_names));
  experiment->add_option("--range", exp_range, "sizes A:B or A:B:STEP")->required();
  experiment->add_option("--seed", exp_seed, "master seed");
  experiment->add_option("--den-bound", exp_den_bound,
                         "denominator bound (random shapes)")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--trials", exp_trials, "trials per instance")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--q-scale", exp_q_scale,
                         "scale on the default sampling probability");
  experiment->add_option("--q", exp_q, "fixed sampling probability in [0,1]");
  experiment->add_option("--policy", exp_policy, "naive | greedy-conflict")
      ->check(CLI::IsMember(policy_names));
  experiment->add_option("--workers", exp_workers, "parallel trial workers")
      ->check(CLI::PositiveNumber);
  experiment->add_flag("--timing", exp_timing,
                       "record wall-clock elapsed_ms (output varies run to run)");
  experiment->add_flag("--exact", exp_exact, "write rationals as num/den");
  experiment->add_option("--out", exp_out, "output CSV file")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));

    if (gen->parsed()) {
      const GenShape shape = detail::parse_shape(gen_shape);
      const bool wants_m = shape == GenShape::grid;
      if (wants_m && gen->count("--n") > 0) {
        throw detail::UsageError("grid takes --m, not --n");
      }
      if (!wants_m && gen->count("--m") > 0) {
        throw detail::UsageError("--m applies only to grid");
      }
      if (wants_m && gen->count("--m") == 0) {
        throw detail::UsageError("grid needs --m");
      }
      if (!wants_m && gen->count("--n") == 0) {
        throw detail::UsageError(gen_shape + " needs --n");
      }
      const bool random_shape =
          shape == GenShape::random_plane || shape == GenShape::random_sphere;
      if (!random_shape && gen->count("--den-bound") > 0) {
        throw detail::UsageError("--den-bound applies only to random shapes");
      }
      GenSpec spec;
      spec.shape = shape;
      spec.m = static_cast<std::size_t>(gen_m);
      spec.n = static_cast<std::size_t>(gen_n);
      spec.seed = gen_seed;
      spec.denominator_bound = gen_den_bound;
      detail::emit_or_print(write_point_file(generate(spec)), gen_out, out);
      return exit_ok;
    }

    if (count->parsed()) {
      const PointSet points = parse_point_file(read_file(count_file));
      const ConfigCounts counts = config_counts(points);
      out << "domain: " << domain_name(points.domain()) << '\n'
          << "N: " << counts.n << '\n'
          << "t: " << counts.t << '\n'
          << "f: " << counts.f << '\n'
          << "distinct: " << counts.distinct << '\n'
          << "multiset:\n";
      constexpr std::size_t shown_cap = 16;
      std::size_t shown = 0;
      for (const auto& [key, multiplicity] : counts.pair_multiset) {
        if (shown == shown_cap) break;
        out << "  " << detail::render_key(key, count_exact) << " -> "
            << multiplicity << '\n';
        ++shown;
      }
      if (counts.pair_multiset.size() > shown_cap) {
        out << "  ... (" << counts.pair_multiset.size() - shown_cap << " more)\n";
      }
      return exit_ok;
    }

    if (extract->parsed()) {
      const PointSet points = parse_point_file(read_file(extract_file));
      ExtractionParams params;
      params.trials = extract_trials;
      params.seed = extract_seed;
      params.q_scale = detail::parse_probability_flag(extract_q_scale, "--q-scale");
      if (extract->count("--q") > 0) {
        params.q_override = detail::parse_probability_flag(extract_q, "--q");
      }
      params.policy = detail::parse_policy(extract_policy);
      const ExtractionResult result =
          random_deletion_extract(points, params, extract_workers);

      Count total_final = 0;
      for (const auto& trial : result.trials) total_final += trial.final_size;
      const Rational mean = Rational(total_final) / params.trials;
      out << "domain: " << domain_name(points.domain()) << '\n'
          << "N: " << points.size() << '\n'
          << "q: " << detail::render_rational(result.q, extract_exact) << '\n'
          << "policy: " << policy_name(params.policy) << '\n'
          << "trials: " << params.trials << '\n'
          << "best_size: " << result.best_subset.size() << '\n'
          << "subset:";
      for (const auto i : result.best_subset) out << ' ' << i;
      out << '\n'
          << "mean_final_size: " << detail::render_rational(mean, extract_exact)
          << '\n'
          << "verified: " << (result.verified ? "true" : "false") << '\n';
      if (!extract_out.empty()) {
        write_file_atomic(extract_out, detail::trial_csv(result.trials));
      }
      return result.verified ? exit_ok : exit_domain_error;
    }

    if (exact_cmd->parsed()) {
      const PointSet points = parse_point_file(read_file(exact_file));
      if (points.size() > 24 && !exact_force) {
        err << "error: refusing exact search on N = " << points.size()
            << " > 24; pass --force to override\n";
        return exit_domain_error;
      }
      const ExactMaxResult result = exact_max_subset(points, exact_budget);
      out << "domain: " << domain_name(points.domain()) << '\n'
          << "N: " << points.size() << '\n'
          << "size: " << result.subset.size() << '\n'
          << "optimal: " << (result.optimal ? "true" : "false") << '\n'
          << "subset:";
      for (const auto i : result.subset) out << ' ' << i;
      out << '\n';
      return exit_ok;
    }

    if (verify->parsed()) {
      const PointSet points = parse_point_file(read_file(verify_file));
      const std::vector<std::size_t> subset =
          detail::parse_index_list(verify_subset);
      const ConflictReport report = verify_distinct(points, subset);
      if (report.empty()) {
        out << "valid\n";
        return exit_ok;
      }
      const DistanceConflict& w = *report.witness;
      out << "invalid: d(" << w.a1 << "," << w.b1 << ") = d(" << w.a2 << ","
          << w.b2 << ") = " << w.key.to_string() << '\n';
      return exit_domain_error;
    }

    if (experiment->parsed()) {
      ExperimentSpec spec;
      spec.shape = detail::parse_shape(exp_shape);
      spec.sizes = detail::parse_range(exp_range);
      const bool random_shape = spec.shape == GenShape::random_plane ||
                                spec.shape == GenShape::random_sphere;
      if (!random_shape && experiment->count("--den-bound") > 0) {
        throw detail::UsageError("--den-bound applies only to random shapes");
      }
      spec.seed = exp_seed;
      spec.denominator_bound = exp_den_bound;
      spec.trials = exp_trials;
      spec.q_scale = detail::parse_probability_flag(exp_q_scale, "--q-scale");
      if (experiment->count("--q") > 0) {
        spec.q_override = detail::parse_probability_flag(exp_q, "--q");
      }
      spec.policy = detail::parse_policy(exp_policy);
      spec.workers = exp_workers;
      spec.timing = exp_timing;
      write_file_atomic(exp_out, experiment_csv(run_experiment(spec), exp_exact));
      return exit_ok;
    }

    err << "error: no subcommand\n";
    return exit_usage_error;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage_error;
  } catch (const detail::UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage_error;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain_error;
  }
}

}  // namespace ddsub
