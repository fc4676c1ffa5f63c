#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "ddsub/geometry.hpp"

namespace ddsub {

using Count = std::int64_t;

// The two configuration counts plus the distance multiset of a point set.
// t counts ordered isosceles triples (p, q1, q2) of distinct points with
// d(p,q1) = d(p,q2); f counts ordered quadruples (p1, p2, q1, q2) of four
// distinct points with d(p1,p2) = d(q1,q2). Both are purely metric, so
// degenerate (collinear) configurations count.
struct ConfigCounts {
  Count n = 0;
  Count t = 0;
  Count f = 0;
  Count distinct = 0;
  std::map<DistanceKey, Count> pair_multiset;  // unordered-pair multiplicities
};

namespace detail {

// Unordered-pair multiplicities, bucketed per domain: an integer table for
// chord classes, a hash map keyed on canonical rationals otherwise.
inline void accumulate_pair_buckets(
    const PointSet& ps, std::vector<Count>& circle_buckets,
    std::unordered_map<Rational, Count, RationalHash>& rational_buckets) {
  const std::size_t n = ps.size();
  switch (ps.domain()) {
    case Domain::circle: {
      const auto& pts = ps.circle_points();
      circle_buckets.assign(
          static_cast<std::size_t>(ps.circle_modulus() / 2 + 1), 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          ++circle_buckets[static_cast<std::size_t>(chord_class(pts[i], pts[j]))];
        }
      }
      break;
    }
    case Domain::plane: {
      const auto& pts = ps.plane_points();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          ++rational_buckets[squared_distance(pts[i], pts[j])];
        }
      }
      break;
    }
    case Domain::sphere: {
      const auto& pts = ps.sphere_points();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          ++rational_buckets[chordal_squared(pts[i], pts[j])];
        }
      }
      break;
    }
  }
}

template <class KeyFn, class BucketPerApex>
Count isosceles_by_apex(std::size_t n, KeyFn&& key_of, BucketPerApex&& buckets) {
  Count t = 0;
  for (std::size_t apex = 0; apex < n; ++apex) {
    t += buckets(apex, key_of);
  }
  return t;
}

}  // namespace detail

// m_d for every distance key d: the number of unordered pairs {p, q} at key d.
// The multiplicities sum to C(|P|, 2). Fewer than two points give an empty map.
inline std::map<DistanceKey, Count> pair_distance_multiset(const PointSet& ps) {
  std::map<DistanceKey, Count> out;
  if (ps.size() < 2) return out;
  std::vector<Count> circle_buckets;
  std::unordered_map<Rational, Count, RationalHash> rational_buckets;
  detail::accumulate_pair_buckets(ps, circle_buckets, rational_buckets);
  if (ps.domain() == Domain::circle) {
    for (std::size_t c = 0; c < circle_buckets.size(); ++c) {
      if (circle_buckets[c] > 0) {
        out.emplace(DistanceKey::chord_class_key(static_cast<std::int64_t>(c)),
                    circle_buckets[c]);
      }
    }
  } else {
    for (auto& [key, mult] : rational_buckets) {
      out.emplace(DistanceKey::squared_distance_key(key), mult);
    }
  }
  return out;
}

// t(P): ordered isosceles triples, computed per apex by bucketing the keys to
// all other points and summing m(m-1) over buckets of size m.
inline Count count_isosceles(const PointSet& ps) {
  const std::size_t n = ps.size();
  if (n < 3) return 0;
  Count t = 0;
  switch (ps.domain()) {
    case Domain::circle: {
      const auto& pts = ps.circle_points();
      std::vector<Count> cnt(static_cast<std::size_t>(ps.circle_modulus() / 2 + 1), 0);
      std::vector<std::size_t> touched;
      touched.reserve(n);
      for (std::size_t apex = 0; apex < n; ++apex) {
        touched.clear();
        for (std::size_t j = 0; j < n; ++j) {
          if (j == apex) continue;
          const auto c = static_cast<std::size_t>(chord_class(pts[apex], pts[j]));
          if (cnt[c]++ == 0) touched.push_back(c);
        }
        for (const auto c : touched) {
          t += cnt[c] * (cnt[c] - 1);
          cnt[c] = 0;
        }
      }
      break;
    }
    case Domain::plane:
    case Domain::sphere: {
      std::unordered_map<Rational, Count, RationalHash> cnt;
      cnt.reserve(n);
      for (std::size_t apex = 0; apex < n; ++apex) {
        cnt.clear();
        for (std::size_t j = 0; j < n; ++j) {
          if (j == apex) continue;
          if (ps.domain() == Domain::plane) {
            ++cnt[squared_distance(ps.plane_points()[apex], ps.plane_points()[j])];
          } else {
            ++cnt[chordal_squared(ps.sphere_points()[apex], ps.sphere_points()[j])];
          }
        }
        for (const auto& [key, m] : cnt) t += m * (m - 1);
      }
      break;
    }
  }
  return t;
}

// f(P) via the double-counting identity
//   sum_d (2 m_d)^2 = f + 4 t + 2 n(n-1),
// where 2 m_d is the ordered-pair count at key d. The subtracted terms are the
// pairs-of-pairs sharing one point (4 alignments of an isosceles triple) and
// sharing both points (2 alignments of the same pair).
inline Count count_repeated_quadruples(const PointSet& ps) {
  const Count n = static_cast<Count>(ps.size());
  if (n < 4) return 0;
  Count sum_sq = 0;
  for (const auto& [key, m] : pair_distance_multiset(ps)) {
    sum_sq += (2 * m) * (2 * m);
  }
  return sum_sq - 4 * count_isosceles(ps) - 2 * n * (n - 1);
}

inline Count count_distinct_distances(const PointSet& ps) {
  if (ps.size() < 2) return 0;
  std::vector<Count> circle_buckets;
  std::unordered_map<Rational, Count, RationalHash> rational_buckets;
  detail::accumulate_pair_buckets(ps, circle_buckets, rational_buckets);
  if (ps.domain() == Domain::circle) {
    Count distinct = 0;
    for (const Count c : circle_buckets) distinct += (c > 0);
    return distinct;
  }
  return static_cast<Count>(rational_buckets.size());
}

// All counts of one set in a single bundle; fields agree with the individual
// operations and satisfy the decomposition identity above.
inline ConfigCounts config_counts(const PointSet& ps) {
  ConfigCounts cc;
  cc.n = static_cast<Count>(ps.size());
  cc.pair_multiset = pair_distance_multiset(ps);
  cc.distinct = static_cast<Count>(cc.pair_multiset.size());
  cc.t = count_isosceles(ps);
  if (cc.n >= 2) {
    Count sum_sq = 0;
    for (const auto& [key, m] : cc.pair_multiset) sum_sq += (2 * m) * (2 * m);
    cc.f = sum_sq - 4 * cc.t - 2 * cc.n * (cc.n - 1);
  }
  return cc;
}

// Dense pair-key index: every unordered pair gets a small integer id, ids are
// assigned in ascending key order, and id lookup is O(1). This is the integer
// working form behind the subset solvers; exact arithmetic happens once, here.
class PairKeyIndex {
 public:
  explicit PairKeyIndex(const PointSet& ps) : n_(ps.size()) {
    ids_.assign(n_ * n_, -1);
    if (n_ < 2) return;

    std::vector<std::int32_t> provisional(n_ * n_, -1);
    std::vector<DistanceKey> reps;
    if (ps.domain() == Domain::circle) {
      const auto& pts = ps.circle_points();
      std::vector<std::int32_t> by_class(
          static_cast<std::size_t>(ps.circle_modulus() / 2 + 1), -1);
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
          const auto c = static_cast<std::size_t>(chord_class(pts[i], pts[j]));
          if (by_class[c] < 0) {
            by_class[c] = static_cast<std::int32_t>(reps.size());
            reps.push_back(
                DistanceKey::chord_class_key(static_cast<std::int64_t>(c)));
          }
          provisional[i * n_ + j] = by_class[c];
        }
      }
    } else {
      std::unordered_map<Rational, std::int32_t, RationalHash> by_key;
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
          const Rational d =
              ps.domain() == Domain::plane
                  ? squared_distance(ps.plane_points()[i], ps.plane_points()[j])
                  : chordal_squared(ps.sphere_points()[i], ps.sphere_points()[j]);
          auto [it, inserted] =
              by_key.try_emplace(d, static_cast<std::int32_t>(reps.size()));
          if (inserted) reps.push_back(DistanceKey::squared_distance_key(d));
          provisional[i * n_ + j] = it->second;
        }
      }
    }

    // Remap provisional ids so that id order equals key order.
    std::vector<std::int32_t> perm(reps.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
      perm[k] = static_cast<std::int32_t>(k);
    }
    std::sort(perm.begin(), perm.end(), [&](std::int32_t a, std::int32_t b) {
      return reps[static_cast<std::size_t>(a)] < reps[static_cast<std::size_t>(b)];
    });
    std::vector<std::int32_t> rank(reps.size());
    keys_.reserve(reps.size());
    for (std::size_t pos = 0; pos < perm.size(); ++pos) {
      rank[static_cast<std::size_t>(perm[pos])] = static_cast<std::int32_t>(pos);
      keys_.push_back(std::move(reps[static_cast<std::size_t>(perm[pos])]));
    }
    mult_.assign(keys_.size(), 0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        const std::int32_t id = rank[static_cast<std::size_t>(provisional[i * n_ + j])];
        ids_[i * n_ + j] = id;
        ids_[j * n_ + i] = id;
        ++mult_[static_cast<std::size_t>(id)];
      }
    }
  }

  std::size_t points() const { return n_; }
  std::size_t distinct() const { return keys_.size(); }

  std::int32_t id(std::size_t i, std::size_t j) const { return ids_[i * n_ + j]; }

  const DistanceKey& key(std::int32_t id) const {
    return keys_[static_cast<std::size_t>(id)];
  }

  Count multiplicity(std::int32_t id) const {
    return mult_[static_cast<std::size_t>(id)];
  }

  // Ordered isosceles-triple count from the integer ids alone.
  Count isosceles_count() const {
    Count t = 0;
    std::vector<Count> cnt(distinct(), 0);
    std::vector<std::int32_t> touched;
    touched.reserve(n_);
    for (std::size_t apex = 0; apex < n_; ++apex) {
      touched.clear();
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == apex) continue;
        const std::int32_t id = ids_[apex * n_ + j];
        if (cnt[static_cast<std::size_t>(id)]++ == 0) touched.push_back(id);
      }
      for (const auto id : touched) {
        auto& c = cnt[static_cast<std::size_t>(id)];
        t += c * (c - 1);
        c = 0;
      }
    }
    return t;
  }

  Count quadruple_count() const {
    const Count n = static_cast<Count>(n_);
    if (n < 4) return 0;
    Count sum_sq = 0;
    for (const Count m : mult_) sum_sq += (2 * m) * (2 * m);
    return sum_sq - 4 * isosceles_count() - 2 * n * (n - 1);
  }

 private:
  std::size_t n_;
  std::vector<std::int32_t> ids_;
  std::vector<DistanceKey> keys_;
  std::vector<Count> mult_;
};

}  // namespace ddsub
