#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ddsub/counting.hpp"
#include "ddsub/geometry.hpp"
#include "ddsub/rng.hpp"

namespace ddsub {

// How a surviving bad configuration loses a point.
//   naive:           one sweep over the sampled set's bad configurations,
//                    deleting each configuration's lowest-index point. At most
//                    one deletion per configuration, so the certificate
//                    |final| >= |sample| - t(Q) - f(Q) holds deterministically.
//   greedy_conflict: repeatedly delete the point participating in the most
//                    remaining bad configurations (ties to the lowest index).
enum class DeletionPolicy { naive, greedy_conflict };

inline const char* policy_name(DeletionPolicy p) {
  return p == DeletionPolicy::naive ? "naive" : "greedy-conflict";
}

struct ExtractionParams {
  Rational q_scale = 1;  // scales the default sampling probability
  Count trials = 100;
  std::uint64_t seed = 0;
  DeletionPolicy policy = DeletionPolicy::naive;
  std::optional<Rational> q_override;  // fixed sampling probability in [0,1]
};

struct TrialRecord {
  Count sampled_size = 0;
  Count t_q = 0;
  Count f_q = 0;
  Count final_size = 0;
  bool certificate_ok = false;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct ExtractionResult {
  std::vector<std::size_t> best_subset;  // ascending indices into P
  std::vector<TrialRecord> trials;
  ExtractionParams params;
  Rational q;  // effective sampling probability
  bool verified = false;
};

struct DistanceConflict {
  std::size_t a1, b1;  // first pair
  std::size_t a2, b2;  // second pair with the same key
  DistanceKey key;
};

struct ConflictReport {
  std::optional<DistanceConflict> witness;

  bool empty() const { return !witness.has_value(); }
};

// Checks that all C(k,2) pairwise distance keys of the subset are pairwise
// different. Returns an empty report on success, otherwise one witness
// pair-of-pairs. Out-of-range or repeated indices are rejected.
inline ConflictReport verify_distinct(const PointSet& ps,
                                      std::span<const std::size_t> subset) {
  std::unordered_set<std::size_t> dedup;
  for (const auto i : subset) {
    if (i >= ps.size()) throw std::invalid_argument("subset index out of range");
    if (!dedup.insert(i).second) {
      throw std::invalid_argument("subset index repeated");
    }
  }
  std::unordered_map<DistanceKey, std::pair<std::size_t, std::size_t>,
                     DistanceKeyHash>
      seen;
  for (std::size_t u = 0; u < subset.size(); ++u) {
    for (std::size_t v = u + 1; v < subset.size(); ++v) {
      const DistanceKey key = ps.key(subset[u], subset[v]);
      auto [it, inserted] = seen.try_emplace(key, subset[u], subset[v]);
      if (!inserted) {
        return ConflictReport{DistanceConflict{it->second.first, it->second.second,
                                               subset[u], subset[v], key}};
      }
    }
  }
  return ConflictReport{};
}

// q*n - q^3*t - q^4*f, exactly. The deterministic certificate's expectation:
// sampling keeps each point with probability q, each triple with q^3 and each
// quadruple with q^4, so this lower-bounds the expected final size.
inline Rational expected_size_bound(Count n, Count t, Count f, const Rational& q) {
  if (q < 0 || q > 1) throw std::invalid_argument("q outside [0,1]");
  const Rational q2 = q * q;
  return q * n - q2 * q * t - q2 * q2 * f;
}

// Effective sampling probability: q_override when set, otherwise
// min(1, q_scale * n^(-2/3) / ln n) with q = 1 for n <= 2 (the formula is
// undefined or above 1 there, and any two points are trivially valid).
// The transcendental factor is evaluated once in double precision and held
// exactly from then on.
inline Rational effective_q(std::size_t n, const ExtractionParams& params) {
  if (params.q_override) return *params.q_override;
  if (n <= 2) return Rational(1);
  const double base =
      std::pow(static_cast<double>(n), -2.0 / 3.0) / std::log(static_cast<double>(n));
  Rational q = params.q_scale * rational_from_double(base);
  if (q > 1) q = 1;
  return q;
}

namespace detail {

// Per-point counts of unordered bad configurations (isosceles triples, plus
// disjoint same-key pair-of-pairs) among the alive points of an indexed set.
struct ConflictLoad {
  std::vector<Count> participation;
  Count total = 0;
};

inline ConflictLoad conflict_load(const PairKeyIndex& idx,
                                  const std::vector<char>& alive) {
  const std::size_t k = idx.points();
  ConflictLoad load;
  load.participation.assign(k, 0);

  // Isosceles triples, per apex.
  std::vector<std::vector<std::uint32_t>> members(idx.distinct());
  std::vector<std::int32_t> touched;
  for (std::size_t apex = 0; apex < k; ++apex) {
    if (!alive[apex]) continue;
    touched.clear();
    for (std::size_t j = 0; j < k; ++j) {
      if (j == apex || !alive[j]) continue;
      const std::int32_t id = idx.id(apex, j);
      auto& bucket = members[static_cast<std::size_t>(id)];
      if (bucket.empty()) touched.push_back(id);
      bucket.push_back(static_cast<std::uint32_t>(j));
    }
    for (const auto id : touched) {
      auto& bucket = members[static_cast<std::size_t>(id)];
      const Count m = static_cast<Count>(bucket.size());
      if (m >= 2) {
        load.participation[apex] += m * (m - 1) / 2;
        for (const auto x : bucket) load.participation[x] += m - 1;
        load.total += m * (m - 1) / 2;
      }
      bucket.clear();
    }
  }

  // Disjoint pairs-of-pairs, per key bucket.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pair_buckets(
      idx.distinct());
  for (std::size_t i = 0; i < k; ++i) {
    if (!alive[i]) continue;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!alive[j]) continue;
      pair_buckets[static_cast<std::size_t>(idx.id(i, j))].emplace_back(
          static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  std::vector<Count> point_count(k, 0);
  for (const auto& bucket : pair_buckets) {
    const Count m = static_cast<Count>(bucket.size());
    if (m < 2) continue;
    for (const auto& [i, j] : bucket) {
      ++point_count[i];
      ++point_count[j];
    }
    Count twice_configs = 0;
    for (const auto& [i, j] : bucket) {
      // Partners disjoint from {i, j}: all but the pairs touching i or j.
      const Count dp = m - point_count[i] - point_count[j] + 1;
      load.participation[i] += dp;
      load.participation[j] += dp;
      twice_configs += dp;
    }
    load.total += twice_configs / 2;
    for (const auto& [i, j] : bucket) {
      point_count[i] = 0;
      point_count[j] = 0;
    }
  }
  return load;
}

// Simultaneous deletion sweep: for every bad configuration of the sampled
// set, its lowest-index point goes. Every configuration loses a member, so
// none survives, and at most one point is removed per configuration.
inline std::vector<char> naive_deletion_set(const PairKeyIndex& idx) {
  const std::size_t k = idx.points();
  std::vector<char> deleted(k, 0);

  std::vector<std::vector<std::uint32_t>> members(idx.distinct());
  std::vector<std::int32_t> touched;
  for (std::size_t apex = 0; apex < k; ++apex) {
    touched.clear();
    for (std::size_t j = 0; j < k; ++j) {
      if (j == apex) continue;
      const std::int32_t id = idx.id(apex, j);
      auto& bucket = members[static_cast<std::size_t>(id)];
      if (bucket.empty()) touched.push_back(id);
      bucket.push_back(static_cast<std::uint32_t>(j));
    }
    for (const auto id : touched) {
      auto& bucket = members[static_cast<std::size_t>(id)];
      // Members ascend, so {apex, bucket[u], bucket[v>u]} has its minimum at
      // min(apex, bucket[u]); every u below the last participates.
      for (std::size_t u = 0; u + 1 < bucket.size(); ++u) {
        deleted[std::min<std::size_t>(apex, bucket[u])] = 1;
      }
      bucket.clear();
    }
  }

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pair_buckets(
      idx.distinct());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      pair_buckets[static_cast<std::size_t>(idx.id(i, j))].emplace_back(
          static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
  }
  for (const auto& bucket : pair_buckets) {
    for (std::size_t u = 0; u + 1 < bucket.size(); ++u) {
      // Lex order puts the union's minimum at bucket[u].first for any
      // disjoint partner later in the bucket.
      for (std::size_t v = u + 1; v < bucket.size(); ++v) {
        const bool disjoint = bucket[u].first != bucket[v].first &&
                              bucket[u].first != bucket[v].second &&
                              bucket[u].second != bucket[v].first &&
                              bucket[u].second != bucket[v].second;
        if (disjoint) {
          deleted[bucket[u].first] = 1;
          break;
        }
      }
    }
  }
  return deleted;
}

struct TrialOutcome {
  TrialRecord record;
  std::vector<std::size_t> final_indices;  // ascending, global
};

inline TrialOutcome run_trial(const PointSet& ps, const Rational& q,
                              DeletionPolicy policy, std::uint64_t seed,
                              Count trial_index) {
  Rng rng(mix_seed(seed, streams::trial, static_cast<std::uint64_t>(trial_index)));
  const BernoulliSampler pick(q);

  std::vector<std::size_t> sample;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (pick(rng)) sample.push_back(i);
  }

  TrialOutcome out;
  out.record.sampled_size = static_cast<Count>(sample.size());

  if (sample.size() < 3) {
    // Too small for any bad configuration.
    out.final_indices = sample;
  } else {
    const PointSet sampled = ps.subset(sample);
    const PairKeyIndex idx(sampled);
    out.record.t_q = idx.isosceles_count();
    out.record.f_q = idx.quadruple_count();

    std::vector<char> removed;
    if (policy == DeletionPolicy::naive) {
      removed = naive_deletion_set(idx);
    } else {
      removed.assign(sample.size(), 0);
      std::vector<char> alive(sample.size(), 1);
      for (;;) {
        const ConflictLoad load = conflict_load(idx, alive);
        if (load.total == 0) break;
        std::size_t worst = 0;
        Count worst_load = -1;
        for (std::size_t i = 0; i < sample.size(); ++i) {
          if (alive[i] && load.participation[i] > worst_load) {
            worst = i;
            worst_load = load.participation[i];
          }
        }
        alive[worst] = 0;
        removed[worst] = 1;
      }
    }
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (!removed[i]) out.final_indices.push_back(sample[i]);
    }
  }

  out.record.final_size = static_cast<Count>(out.final_indices.size());
  out.record.certificate_ok =
      out.record.final_size >=
          out.record.sampled_size - out.record.t_q - out.record.f_q &&
      verify_distinct(ps, out.final_indices).empty();
  return out;
}

inline void validate(const ExtractionParams& params) {
  if (params.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (params.q_scale <= 0) throw std::invalid_argument("q_scale must be positive");
  if (params.q_override && (*params.q_override < 0 || *params.q_override > 1)) {
    throw std::invalid_argument("q override outside [0,1]");
  }
}

}  // namespace detail

// The sampling-plus-deletion extractor. Each trial draws a Bernoulli(q)
// sample (one 64-bit draw per point, stream derived from (seed, trial)),
// deletes points per the policy until no isosceles triple or repeated
// distance survives, and records a certificate. The best subset over all
// trials is returned; if every trial ends empty, the single lowest-index
// point stands in. Identical inputs give identical results for any worker
// count.
inline ExtractionResult random_deletion_extract(const PointSet& ps,
                                                const ExtractionParams& params,
                                                int workers = 1) {
  detail::validate(params);
  if (ps.size() == 0) throw std::invalid_argument("extraction needs at least one point");

  ExtractionResult result;
  result.params = params;
  result.q = effective_q(ps.size(), params);

  const Count trials = params.trials;
  std::vector<detail::TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  const auto run_range = [&](Count begin, Count stride) {
    for (Count k = begin; k < trials; k += stride) {
      outcomes[static_cast<std::size_t>(k)] =
          detail::run_trial(ps, result.q, params.policy, params.seed, k);
    }
  };
  const int w = std::max(1, std::min<int>(workers, static_cast<int>(trials)));
  if (w == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w));
    for (int t = 0; t < w; ++t) {
      pool.emplace_back(run_range, static_cast<Count>(t), static_cast<Count>(w));
    }
    for (auto& th : pool) th.join();
  }

  result.trials.reserve(outcomes.size());
  const detail::TrialOutcome* best = nullptr;
  for (const auto& o : outcomes) {
    result.trials.push_back(o.record);
    if (best == nullptr || o.record.final_size > best->record.final_size) {
      best = &o;
    }
  }
  if (best->final_indices.empty()) {
    result.best_subset = {0};
  } else {
    result.best_subset = best->final_indices;
  }
  result.verified = verify_distinct(ps, result.best_subset).empty();
  return result;
}

// Deterministic baseline: scan points in the given order (input order, or a
// seeded Fisher-Yates shuffle) and keep a point iff the subset stays valid.
// The result is maximal for single-point additions in that order.
inline std::vector<std::size_t> greedy_extract(
    const PointSet& ps, std::optional<std::uint64_t> shuffle_seed = std::nullopt) {
  const std::size_t n = ps.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle_seed) {
    Rng rng(mix_seed(*shuffle_seed, streams::shuffle));
    for (std::size_t i = n; i > 1; --i) {
      std::swap(order[i - 1], order[rng.below(i)]);
    }
  }

  std::vector<std::size_t> chosen;
  std::unordered_set<DistanceKey, DistanceKeyHash> used;
  std::vector<DistanceKey> fresh;
  for (const auto p : order) {
    fresh.clear();
    bool ok = true;
    for (const auto s : chosen) {
      DistanceKey key = ps.key(p, s);
      if (used.contains(key) ||
          std::find(fresh.begin(), fresh.end(), key) != fresh.end()) {
        ok = false;
        break;
      }
      fresh.push_back(std::move(key));
    }
    if (ok) {
      chosen.push_back(p);
      for (auto& key : fresh) used.insert(std::move(key));
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

struct ExactMaxResult {
  std::vector<std::size_t> subset;  // ascending
  bool optimal = false;
};

// Branch-and-bound maximum distinct-distance subset. Branches on points in
// descending conflict-degree order, prunes a branch when the prefix already
// repeats a key or cannot beat the incumbent, and starts from the greedy
// baseline. optimal is true iff the search finished within node_budget, in
// which case the returned size is the true maximum.
inline ExactMaxResult exact_max_subset(const PointSet& ps,
                                       std::int64_t node_budget) {
  if (node_budget < 1) throw std::invalid_argument("node budget must be >= 1");
  const std::size_t n = ps.size();
  if (n == 0) return {{}, true};

  const PairKeyIndex idx(ps);
  const detail::ConflictLoad load =
      detail::conflict_load(idx, std::vector<char>(n, 1));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return load.participation[a] > load.participation[b];
  });

  std::vector<std::size_t> best = greedy_extract(ps);
  std::vector<std::size_t> chosen;
  std::vector<char> used(idx.distinct(), 0);
  std::vector<std::int32_t> mark_stack;
  std::int64_t nodes = 0;
  bool aborted = false;

  const auto unwind = [&](std::size_t base) {
    while (mark_stack.size() > base) {
      used[static_cast<std::size_t>(mark_stack.back())] = 0;
      mark_stack.pop_back();
    }
  };
  const auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (aborted) return;
    if (++nodes > node_budget) {
      aborted = true;
      return;
    }
    if (chosen.size() + (n - pos) <= best.size()) return;
    if (pos == n) return;  // unreachable while an improvement is possible

    const std::size_t p = order[pos];
    const std::size_t base = mark_stack.size();
    bool ok = true;
    for (const auto s : chosen) {
      const std::int32_t id = idx.id(p, s);
      if (used[static_cast<std::size_t>(id)]) {
        ok = false;
        break;
      }
      used[static_cast<std::size_t>(id)] = 1;
      mark_stack.push_back(id);
    }
    if (ok) {
      chosen.push_back(p);
      if (chosen.size() > best.size()) best = chosen;
      self(self, pos + 1);
      chosen.pop_back();
    }
    unwind(base);
    self(self, pos + 1);
  };
  dfs(dfs, 0);

  std::sort(best.begin(), best.end());
  return {std::move(best), !aborted};
}

}  // namespace ddsub
