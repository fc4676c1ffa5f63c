#pragma once

// Brute-force reference implementations, deliberately written straight from
// the definitions with no shared machinery, so the optimized library code can
// be checked against them.

#include <bit>
#include <cstdint>
#include <vector>

#include "ddsub/counting.hpp"
#include "ddsub/geometry.hpp"

namespace ddsub::oracle {

inline std::vector<DistanceKey> key_matrix(const PointSet& ps) {
  const std::size_t n = ps.size();
  std::vector<DistanceKey> keys;
  keys.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      keys.push_back(i == j ? DistanceKey::chord_class_key(-1)
                            : distance_key(ps, i, j));
    }
  }
  return keys;
}

// Ordered triples (p, q1, q2) of distinct points with d(p,q1) = d(p,q2).
inline Count brute_isosceles(const PointSet& ps) {
  const std::size_t n = ps.size();
  const auto keys = key_matrix(ps);
  Count t = 0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q1 = 0; q1 < n; ++q1) {
      if (q1 == p) continue;
      for (std::size_t q2 = 0; q2 < n; ++q2) {
        if (q2 == p || q2 == q1) continue;
        if (keys[p * n + q1] == keys[p * n + q2]) ++t;
      }
    }
  }
  return t;
}

// Ordered quadruples (p1, p2, q1, q2) of four distinct points with
// d(p1,p2) = d(q1,q2).
inline Count brute_quadruples(const PointSet& ps) {
  const std::size_t n = ps.size();
  const auto keys = key_matrix(ps);
  Count f = 0;
  for (std::size_t p1 = 0; p1 < n; ++p1) {
    for (std::size_t p2 = 0; p2 < n; ++p2) {
      if (p2 == p1) continue;
      for (std::size_t q1 = 0; q1 < n; ++q1) {
        if (q1 == p1 || q1 == p2) continue;
        for (std::size_t q2 = 0; q2 < n; ++q2) {
          if (q2 == p1 || q2 == p2 || q2 == q1) continue;
          if (keys[p1 * n + p2] == keys[q1 * n + q2]) ++f;
        }
      }
    }
  }
  return f;
}

// Maximum size of a subset with pairwise different distance keys, by checking
// every one of the 2^n subsets. Usable up to n around 20; intended for n <= 12.
inline std::size_t brute_max_subset(const PointSet& ps) {
  const std::size_t n = ps.size();
  if (n == 0) return 0;
  const auto keys = key_matrix(ps);

  // pair ids 0..P-1 for i < j, and a P x P equal-key table from exact compares
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  const std::size_t np = pairs.size();
  std::vector<char> equal_key(np * np, 0);
  for (std::size_t u = 0; u < np; ++u) {
    for (std::size_t v = 0; v < np; ++v) {
      equal_key[u * np + v] =
          keys[pairs[u].first * n + pairs[u].second] ==
          keys[pairs[v].first * n + pairs[v].second];
    }
  }

  std::size_t best = 1;  // a single point is always valid
  std::vector<std::size_t> chosen_pairs;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    chosen_pairs.clear();
    bool valid = true;
    for (std::size_t u = 0; valid && u < np; ++u) {
      if (((mask >> pairs[u].first) & 1) == 0 ||
          ((mask >> pairs[u].second) & 1) == 0) {
        continue;
      }
      for (const auto v : chosen_pairs) {
        if (equal_key[u * np + v]) {
          valid = false;
          break;
        }
      }
      chosen_pairs.push_back(u);
    }
    if (valid) best = size;
  }
  return best;
}

}  // namespace ddsub::oracle
