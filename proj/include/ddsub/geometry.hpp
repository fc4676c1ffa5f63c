#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ddsub/rational.hpp"

namespace ddsub {

enum class Domain { plane, sphere, circle };

inline const char* domain_name(Domain d) {
  switch (d) {
    case Domain::plane: return "plane";
    case Domain::sphere: return "sphere";
    case Domain::circle: return "circle";
  }
  return "?";
}

struct PlanePoint {
  Rational x;
  Rational y;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

// A point of the unit sphere with exactly rational coordinates.
// Construction fails unless x^2 + y^2 + z^2 = 1 holds exactly.
class SpherePoint {
 public:
  SpherePoint(Rational x, Rational y, Rational z)
      : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
    if (x_ * x_ + y_ * y_ + z_ * z_ != 1) {
      throw std::invalid_argument("point is not on the unit sphere");
    }
  }

  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }
  const Rational& z() const { return z_; }

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  Rational x_;
  Rational y_;
  Rational z_;
};

// One of N equally spaced points on a great circle, held symbolically as an
// index mod N. The Cartesian embedding is irrational; the index is not.
class CirclePoint {
 public:
  CirclePoint(std::int64_t index, std::int64_t modulus)
      : index_(index), modulus_(modulus) {
    if (modulus < 1) throw std::invalid_argument("circle modulus must be >= 1");
    if (index < 0 || index >= modulus) {
      throw std::invalid_argument("circle index outside [0, modulus)");
    }
  }

  std::int64_t index() const { return index_; }
  std::int64_t modulus() const { return modulus_; }

  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;

 private:
  std::int64_t index_;
  std::int64_t modulus_;
};

inline Rational squared_distance(const PlanePoint& p, const PlanePoint& q) {
  const Rational dx = p.x - q.x;
  const Rational dy = p.y - q.y;
  return dx * dx + dy * dy;
}

// Squared chordal distance 2 - 2(p.q) between unit vectors; in [0, 4].
// Geodesic distance is a strictly increasing function of this value, so the
// two induce the same equality relation on point pairs.
inline Rational chordal_squared(const SpherePoint& p, const SpherePoint& q) {
  const Rational dot = p.x() * q.x() + p.y() * q.y() + p.z() * q.z();
  return 2 - 2 * dot;
}

// (x, y) -> (2x, 2y, x^2 + y^2 - 1) / (x^2 + y^2 + 1). Injective; hits every
// sphere point except the projection point (0, 0, 1). Rational in, rational
// out, and the unit-norm invariant holds exactly.
inline SpherePoint inverse_stereographic(const PlanePoint& p) {
  const Rational s = p.x * p.x + p.y * p.y;
  const Rational denom = s + 1;
  return SpherePoint(2 * p.x / denom, 2 * p.y / denom, (s - 1) / denom);
}

// Chord class min(|i-j| mod N, N - |i-j| mod N); equal classes correspond to
// equal chord lengths of the equispaced embedding and vice versa.
inline std::int64_t chord_class(const CirclePoint& p, const CirclePoint& q) {
  if (p.modulus() != q.modulus()) {
    throw std::invalid_argument("chord class of points with different moduli");
  }
  const std::int64_t n = p.modulus();
  std::int64_t d = p.index() - q.index();
  if (d < 0) d = -d;
  return d <= n - d ? d : n - d;
}

// Exact, hashable, totally ordered token with: key(p,q) == key(p',q') iff the
// geometric distances coincide (within one domain). Plane and sphere keys are
// exact squared distances; circle keys are chord classes.
class DistanceKey {
 public:
  enum class Kind : std::uint8_t { squared, chord };

  static DistanceKey squared_distance_key(Rational d) {
    DistanceKey k;
    k.kind_ = Kind::squared;
    k.squared_ = std::move(d);
    return k;
  }

  static DistanceKey chord_class_key(std::int64_t c) {
    DistanceKey k;
    k.kind_ = Kind::chord;
    k.chord_ = c;
    return k;
  }

  Kind kind() const { return kind_; }
  const Rational& squared() const { return squared_; }
  std::int64_t chord() const { return chord_; }

  bool is_zero() const {
    return kind_ == Kind::squared ? squared_ == 0 : chord_ == 0;
  }

  friend bool operator==(const DistanceKey& a, const DistanceKey& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ == Kind::squared ? a.squared_ == b.squared_
                                    : a.chord_ == b.chord_;
  }

  friend bool operator<(const DistanceKey& a, const DistanceKey& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    return a.kind_ == Kind::squared ? a.squared_ < b.squared_
                                    : a.chord_ < b.chord_;
  }

  std::size_t hash() const {
    const std::size_t h = kind_ == Kind::squared
                              ? RationalHash{}(squared_)
                              : std::hash<std::int64_t>{}(chord_);
    return h ^ (static_cast<std::size_t>(kind_) << 1);
  }

  // "25/4" for squared-distance keys, "c3" for chord classes.
  std::string to_string() const {
    return kind_ == Kind::squared ? format_rational(squared_)
                                  : "c" + std::to_string(chord_);
  }

 private:
  DistanceKey() = default;

  Kind kind_ = Kind::squared;
  Rational squared_;
  std::int64_t chord_ = 0;
};

struct DistanceKeyHash {
  std::size_t operator()(const DistanceKey& k) const { return k.hash(); }
};

namespace detail {

struct PlanePointHash {
  std::size_t operator()(const PlanePoint& p) const {
    std::size_t h = RationalHash{}(p.x);
    boost::hash_combine(h, RationalHash{}(p.y));
    return h;
  }
};

struct SpherePointHash {
  std::size_t operator()(const SpherePoint& p) const {
    std::size_t h = RationalHash{}(p.x());
    boost::hash_combine(h, RationalHash{}(p.y()));
    boost::hash_combine(h, RationalHash{}(p.z()));
    return h;
  }
};

}  // namespace detail

// A homogeneous, duplicate-free, ordered collection of points in one domain.
class PointSet {
 public:
  static PointSet plane(std::vector<PlanePoint> points) {
    PointSet ps;
    ps.domain_ = Domain::plane;
    std::unordered_set<PlanePoint, detail::PlanePointHash> seen;
    for (const auto& p : points) {
      if (!seen.insert(p).second) {
        throw std::invalid_argument("duplicate point in set");
      }
    }
    ps.plane_ = std::move(points);
    return ps;
  }

  static PointSet sphere(std::vector<SpherePoint> points) {
    PointSet ps;
    ps.domain_ = Domain::sphere;
    std::unordered_set<SpherePoint, detail::SpherePointHash> seen;
    for (const auto& p : points) {
      if (!seen.insert(p).second) {
        throw std::invalid_argument("duplicate point in set");
      }
    }
    ps.sphere_ = std::move(points);
    return ps;
  }

  static PointSet circle(std::int64_t modulus, std::vector<std::int64_t> indices) {
    if (modulus < 1) throw std::invalid_argument("circle modulus must be >= 1");
    PointSet ps;
    ps.domain_ = Domain::circle;
    ps.circle_modulus_ = modulus;
    std::vector<char> seen(static_cast<std::size_t>(modulus), 0);
    ps.circle_.reserve(indices.size());
    for (const std::int64_t idx : indices) {
      CirclePoint p(idx, modulus);  // range-checks
      if (seen[static_cast<std::size_t>(idx)]++) {
        throw std::invalid_argument("duplicate point in set");
      }
      ps.circle_.push_back(p);
    }
    return ps;
  }

  Domain domain() const { return domain_; }

  std::size_t size() const {
    switch (domain_) {
      case Domain::plane: return plane_.size();
      case Domain::sphere: return sphere_.size();
      case Domain::circle: return circle_.size();
    }
    return 0;
  }

  // Distance key of the pair {i, j}. Symmetric; i == j is rejected because a
  // pair requires two distinct points.
  DistanceKey key(std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size()) {
      throw std::out_of_range("point index out of range");
    }
    if (i == j) throw std::invalid_argument("distance key of a point with itself");
    switch (domain_) {
      case Domain::plane:
        return DistanceKey::squared_distance_key(
            squared_distance(plane_[i], plane_[j]));
      case Domain::sphere:
        return DistanceKey::squared_distance_key(
            chordal_squared(sphere_[i], sphere_[j]));
      case Domain::circle:
        return DistanceKey::chord_class_key(chord_class(circle_[i], circle_[j]));
    }
    throw std::logic_error("unreachable");
  }

  // New set holding the points at the given positions. Indices must be
  // strictly ascending and in range, so the subset preserves input order.
  PointSet subset(std::span<const std::size_t> keep) const {
    for (std::size_t k = 0; k < keep.size(); ++k) {
      if (keep[k] >= size()) throw std::out_of_range("subset index out of range");
      if (k > 0 && keep[k] <= keep[k - 1]) {
        throw std::invalid_argument("subset indices must be strictly ascending");
      }
    }
    PointSet out;
    out.domain_ = domain_;
    out.circle_modulus_ = circle_modulus_;
    switch (domain_) {
      case Domain::plane:
        for (const auto i : keep) out.plane_.push_back(plane_[i]);
        break;
      case Domain::sphere:
        for (const auto i : keep) out.sphere_.push_back(sphere_[i]);
        break;
      case Domain::circle:
        for (const auto i : keep) out.circle_.push_back(circle_[i]);
        break;
    }
    return out;
  }

  const std::vector<PlanePoint>& plane_points() const {
    require(Domain::plane);
    return plane_;
  }
  const std::vector<SpherePoint>& sphere_points() const {
    require(Domain::sphere);
    return sphere_;
  }
  const std::vector<CirclePoint>& circle_points() const {
    require(Domain::circle);
    return circle_;
  }
  std::int64_t circle_modulus() const {
    require(Domain::circle);
    return circle_modulus_;
  }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    if (a.domain_ != b.domain_) return false;
    switch (a.domain_) {
      case Domain::plane: return a.plane_ == b.plane_;
      case Domain::sphere: return a.sphere_ == b.sphere_;
      case Domain::circle:
        return a.circle_modulus_ == b.circle_modulus_ && a.circle_ == b.circle_;
    }
    return false;
  }

 private:
  PointSet() = default;

  void require(Domain d) const {
    if (domain_ != d) throw std::logic_error("point set has a different domain");
  }

  Domain domain_ = Domain::plane;
  std::vector<PlanePoint> plane_;
  std::vector<SpherePoint> sphere_;
  std::vector<CirclePoint> circle_;
  std::int64_t circle_modulus_ = 0;
};

inline DistanceKey distance_key(const PointSet& ps, std::size_t i, std::size_t j) {
  return ps.key(i, j);
}

}  // namespace ddsub

template <>
struct std::hash<ddsub::DistanceKey> {
  std::size_t operator()(const ddsub::DistanceKey& k) const { return k.hash(); }
};
