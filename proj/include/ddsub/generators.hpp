#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ddsub/geometry.hpp"
#include "ddsub/rng.hpp"

namespace ddsub {

enum class GenShape { grid, circle, random_plane, random_sphere };

inline const char* shape_name(GenShape s) {
  switch (s) {
    case GenShape::grid: return "grid";
    case GenShape::circle: return "circle";
    case GenShape::random_plane: return "random-plane";
    case GenShape::random_sphere: return "random-sphere";
  }
  return "?";
}

struct GenSpec {
  GenShape shape = GenShape::grid;
  std::int64_t m = 1;                  // grid side length
  std::int64_t n = 1;                  // point count for the other shapes
  std::uint64_t seed = 0;              // random shapes only
  std::int64_t denominator_bound = 1;  // random shapes only
};

// The m x m integer grid {(i, j) : 0 <= i, j < m}, row-major.
inline PointSet grid(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("grid side must be >= 1");
  std::vector<PlanePoint> pts;
  pts.reserve(static_cast<std::size_t>(m * m));
  for (std::int64_t i = 0; i < m; ++i) {
    for (std::int64_t j = 0; j < m; ++j) {
      pts.push_back(PlanePoint{Rational(i), Rational(j)});
    }
  }
  return PointSet::plane(std::move(pts));
}

// N equally spaced points on a great circle, held as indices mod N.
inline PointSet circle_equispaced(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("circle point count must be >= 1");
  std::vector<std::int64_t> indices(static_cast<std::size_t>(n));
  std::iota(indices.begin(), indices.end(), 0);
  return PointSet::circle(n, std::move(indices));
}

// n distinct points with coordinates a/b, |a| <= bound^2, 1 <= b <= bound.
// Duplicate draws are redrawn; the result is a pure function of the inputs.
inline PointSet random_plane(std::int64_t n, std::uint64_t seed,
                             std::int64_t denominator_bound) {
  if (n < 1) throw std::invalid_argument("point count must be >= 1");
  if (denominator_bound < 1) {
    throw std::invalid_argument("denominator bound must be >= 1");
  }
  if (denominator_bound > 2'000'000'000) {
    throw std::invalid_argument("denominator bound too large");
  }
  const std::uint64_t b = static_cast<std::uint64_t>(denominator_bound);
  const std::uint64_t num_range = 2 * b * b + 1;  // numerators in [-b^2, b^2]

  Rng rng(mix_seed(seed, streams::generator));
  const auto draw_coordinate = [&]() {
    const std::int64_t num =
        static_cast<std::int64_t>(rng.below(num_range)) -
        static_cast<std::int64_t>(b * b);
    const std::int64_t den = 1 + static_cast<std::int64_t>(rng.below(b));
    return make_rational(num, den);
  };

  std::vector<PlanePoint> pts;
  pts.reserve(static_cast<std::size_t>(n));
  std::unordered_set<PlanePoint, detail::PlanePointHash> seen;
  std::int64_t stale = 0;
  while (static_cast<std::int64_t>(pts.size()) < n) {
    PlanePoint p{draw_coordinate(), draw_coordinate()};
    if (seen.insert(p).second) {
      pts.push_back(std::move(p));
      stale = 0;
    } else if (++stale > 10'000) {
      throw std::runtime_error(
          "coordinate space too small for the requested number of distinct points");
    }
  }
  return PointSet::plane(std::move(pts));
}

// Random rational sphere points: the inverse stereographic image of
// random_plane with the same parameters. Projection is injective, so
// distinctness carries over, and every image satisfies the exact unit-norm
// invariant. The projection point (0, 0, 1) is unreachable.
inline PointSet random_sphere(std::int64_t n, std::uint64_t seed,
                              std::int64_t denominator_bound) {
  const PointSet plane_set = random_plane(n, seed, denominator_bound);
  std::vector<SpherePoint> pts;
  pts.reserve(plane_set.size());
  for (const auto& p : plane_set.plane_points()) {
    pts.push_back(inverse_stereographic(p));
  }
  return PointSet::sphere(std::move(pts));
}

inline PointSet generate(const GenSpec& spec) {
  switch (spec.shape) {
    case GenShape::grid: return grid(spec.m);
    case GenShape::circle: return circle_equispaced(spec.n);
    case GenShape::random_plane:
      return random_plane(spec.n, spec.seed, spec.denominator_bound);
    case GenShape::random_sphere:
      return random_sphere(spec.n, spec.seed, spec.denominator_bound);
  }
  throw std::logic_error("unreachable");
}

}  // namespace ddsub
