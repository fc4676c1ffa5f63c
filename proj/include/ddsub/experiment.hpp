#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ddsub/counting.hpp"
#include "ddsub/extraction.hpp"
#include "ddsub/generators.hpp"
#include "ddsub/rng.hpp"

namespace ddsub {

struct ExperimentSpec {
  GenShape shape = GenShape::grid;
  std::vector<std::size_t> sizes;  // grid side lengths, or point counts
  std::uint64_t seed = 0;          // master seed; per-instance streams derive from it
  std::uint32_t denominator_bound = 1000;
  Count trials = 100;
  Rational q_scale = 1;
  std::optional<Rational> q_override;
  DeletionPolicy policy = DeletionPolicy::naive;
  int workers = 1;
  // Real wall-clock in elapsed_ms. Off by default: timing varies run to run,
  // and the default output is byte-reproducible.
  bool timing = false;
};

struct ExperimentRow {
  Domain domain = Domain::plane;
  Count n = 0;
  Count t = 0;
  Count f = 0;
  Count distinct = 0;
  Rational q;
  Count trials = 0;
  Rational mean_final_size;
  Count best_size = 0;
  Rational bound;
  std::uint64_t seed = 0;  // the master seed, echoed per row
  std::int64_t elapsed_ms = 0;
};

// One instance per entry of spec.sizes, in order. Each instance draws its
// generator and extraction seeds from (master seed, instance size), so rows
// are independent of each other and of how trials are scheduled.
inline std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
  if (spec.sizes.empty()) throw std::invalid_argument("experiment needs at least one size");
  std::vector<ExperimentRow> rows;
  rows.reserve(spec.sizes.size());
  for (const auto size : spec.sizes) {
    const auto started = std::chrono::steady_clock::now();

    GenSpec gen_spec;
    gen_spec.shape = spec.shape;
    gen_spec.m = size;
    gen_spec.n = size;
    gen_spec.seed = mix_seed(spec.seed, streams::experiment_gen, size);
    gen_spec.denominator_bound = spec.denominator_bound;
    const PointSet points = generate(gen_spec);

    const PairKeyIndex idx(points);

    ExtractionParams params;
    params.q_scale = spec.q_scale;
    params.trials = spec.trials;
    params.seed = mix_seed(spec.seed, streams::experiment_extract, size);
    params.policy = spec.policy;
    params.q_override = spec.q_override;
    const ExtractionResult extracted =
        random_deletion_extract(points, params, spec.workers);

    Count total_final = 0;
    for (const auto& trial : extracted.trials) total_final += trial.final_size;

    ExperimentRow row;
    row.domain = points.domain();
    row.n = static_cast<Count>(points.size());
    row.t = idx.isosceles_count();
    row.f = idx.quadruple_count();
    row.distinct = static_cast<Count>(idx.distinct());
    row.q = extracted.q;
    row.trials = spec.trials;
    row.mean_final_size = Rational(total_final) / spec.trials;
    row.best_size = static_cast<Count>(extracted.best_subset.size());
    row.bound = expected_size_bound(row.n, row.t, row.f, row.q);
    row.seed = spec.seed;
    if (spec.timing) {
      row.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string csv_field(std::string_view value) {
  const bool needs_quoting =
      value.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quoting) return std::string(value);
  std::string quoted = "\"";
  for (const char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

// CSV serialization: header matches the ExperimentRow fields; rationals render
// as 12-significant-digit decimals, or as num/den with exact = true.
inline std::string experiment_csv(const std::vector<ExperimentRow>& rows,
                                  bool exact = false) {
  const auto rational_field = [exact](const Rational& value) {
    return exact ? format_rational(value) : format_decimal(value);
  };
  std::ostringstream out;
  out << "domain,N,t,f,distinct,q,trials,mean_final_size,best_size,bound,seed,"
         "elapsed_ms\n";
  for (const auto& row : rows) {
    out << csv_field(domain_name(row.domain)) << ',' << row.n << ',' << row.t
        << ',' << row.f << ',' << row.distinct << ','
        << csv_field(rational_field(row.q)) << ',' << row.trials << ','
        << csv_field(rational_field(row.mean_final_size)) << ',' << row.best_size
        << ',' << csv_field(rational_field(row.bound)) << ',' << row.seed << ','
        << row.elapsed_ms << '\n';
  }
  return std::move(out).str();
}

}  // namespace ddsub
