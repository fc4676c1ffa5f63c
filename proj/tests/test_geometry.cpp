#include "ddsub/geometry.hpp"

#include <vector>

#include <gtest/gtest.h>

namespace ddsub {
namespace {

PlanePoint pp(Rational x, Rational y) { return PlanePoint{std::move(x), std::move(y)}; }

TEST(SquaredDistance, MatchesPythagoras) {
  EXPECT_EQ(squared_distance(pp(0, 0), pp(3, 4)), Rational(25));
  EXPECT_EQ(squared_distance(pp(make_rational(1, 2), 0), pp(0, make_rational(1, 2))),
            make_rational(1, 2));
  EXPECT_EQ(squared_distance(pp(-1, -1), pp(-1, -1)), Rational(0));
}

TEST(SpherePoint, EnforcesExactUnitNorm) {
  EXPECT_NO_THROW(SpherePoint(0, 0, 1));
  EXPECT_NO_THROW(SpherePoint(make_rational(3, 5), make_rational(4, 5), 0));
  EXPECT_THROW(SpherePoint(1, 1, 1), std::invalid_argument);
  EXPECT_THROW(SpherePoint(make_rational(1, 2), 0, 0), std::invalid_argument);
}

TEST(ChordalSquared, AntipodalAndOrthogonal) {
  const SpherePoint north(0, 0, 1);
  const SpherePoint south(0, 0, -1);
  const SpherePoint equator(1, 0, 0);
  EXPECT_EQ(chordal_squared(north, south), Rational(4));
  EXPECT_EQ(chordal_squared(north, equator), Rational(2));
  EXPECT_EQ(chordal_squared(north, north), Rational(0));
}

TEST(InverseStereographic, KnownImages) {
  const SpherePoint origin_image = inverse_stereographic(pp(0, 0));
  EXPECT_EQ(origin_image.x(), 0);
  EXPECT_EQ(origin_image.y(), 0);
  EXPECT_EQ(origin_image.z(), -1);

  const SpherePoint q = inverse_stereographic(pp(make_rational(3, 4), 0));
  EXPECT_EQ(q.x(), make_rational(24, 25));
  EXPECT_EQ(q.y(), 0);
  EXPECT_EQ(q.z(), make_rational(-7, 25));
}

TEST(InverseStereographic, AlwaysLandsOnTheSphere) {
  const std::vector<PlanePoint> samples = {
      pp(0, 0), pp(1, 2), pp(make_rational(-7, 3), make_rational(5, 11)),
      pp(1000, -1000), pp(make_rational(1, 1000), 0)};
  for (const auto& p : samples) {
    const SpherePoint s = inverse_stereographic(p);  // the ctor re-checks
    EXPECT_EQ(s.x() * s.x() + s.y() * s.y() + s.z() * s.z(), Rational(1));
  }
}

TEST(ChordClass, FoldsAroundHalfway) {
  const auto at = [](std::int64_t i) { return CirclePoint(i, 4); };
  EXPECT_EQ(chord_class(at(0), at(1)), 1);
  EXPECT_EQ(chord_class(at(0), at(2)), 2);
  EXPECT_EQ(chord_class(at(0), at(3)), 1);
  EXPECT_EQ(chord_class(at(2), at(2)), 0);
  EXPECT_THROW(chord_class(CirclePoint(0, 4), CirclePoint(0, 5)),
               std::invalid_argument);
}

TEST(CirclePoint, ValidatesIndexRange) {
  EXPECT_THROW(CirclePoint(4, 4), std::invalid_argument);
  EXPECT_THROW(CirclePoint(-1, 4), std::invalid_argument);
  EXPECT_THROW(CirclePoint(0, 0), std::invalid_argument);
}

TEST(DistanceKeyTest, EqualityRespectsKindAndValue) {
  const auto sq1 = DistanceKey::squared_distance_key(Rational(2));
  const auto sq2 = DistanceKey::squared_distance_key(Rational(2));
  const auto sq3 = DistanceKey::squared_distance_key(make_rational(25, 4));
  const auto ch2 = DistanceKey::chord_class_key(2);
  EXPECT_EQ(sq1, sq2);
  EXPECT_NE(sq1, sq3);
  EXPECT_NE(sq1, ch2);  // kinds never mix
  EXPECT_EQ(sq1.hash(), sq2.hash());
  EXPECT_LT(sq1, sq3);
  EXPECT_EQ(sq3.to_string(), "25/4");
  EXPECT_EQ(ch2.to_string(), "c2");
  EXPECT_TRUE(DistanceKey::squared_distance_key(Rational(0)).is_zero());
  EXPECT_FALSE(sq1.is_zero());
}

TEST(PointSetTest, FactoriesRejectDuplicates) {
  EXPECT_THROW(PointSet::plane({pp(0, 0), pp(1, 1), pp(0, 0)}),
               std::invalid_argument);
  EXPECT_THROW(PointSet::sphere({SpherePoint(0, 0, 1), SpherePoint(0, 0, 1)}),
               std::invalid_argument);
  EXPECT_THROW(PointSet::circle(5, {0, 2, 2}), std::invalid_argument);
}

TEST(PointSetTest, KeyValidatesIndices) {
  const PointSet ps = PointSet::plane({pp(0, 0), pp(1, 0)});
  EXPECT_EQ(ps.key(0, 1), DistanceKey::squared_distance_key(Rational(1)));
  EXPECT_THROW(ps.key(0, 0), std::invalid_argument);
  EXPECT_THROW(ps.key(0, 2), std::out_of_range);
}

TEST(PointSetTest, KeysAcrossDomains) {
  const PointSet circle = PointSet::circle(6, {0, 1, 2, 3, 4, 5});
  EXPECT_EQ(circle.key(0, 5), DistanceKey::chord_class_key(1));
  EXPECT_EQ(circle.key(1, 4), DistanceKey::chord_class_key(3));

  const PointSet sphere =
      PointSet::sphere({SpherePoint(0, 0, 1), SpherePoint(0, 0, -1)});
  EXPECT_EQ(sphere.key(0, 1), DistanceKey::squared_distance_key(Rational(4)));
}

TEST(PointSetTest, SubsetKeepsOrderAndDomain) {
  const PointSet ps =
      PointSet::plane({pp(0, 0), pp(1, 0), pp(2, 0), pp(3, 0)});
  const std::vector<std::size_t> pick = {1, 3};
  const PointSet sub = ps.subset(pick);
  EXPECT_EQ(sub.size(), 2u);
  EXPECT_EQ(sub.plane_points()[0], pp(1, 0));
  EXPECT_EQ(sub.plane_points()[1], pp(3, 0));

  const std::vector<std::size_t> unsorted = {3, 1};
  EXPECT_THROW(ps.subset(unsorted), std::invalid_argument);
  const std::vector<std::size_t> repeated = {1, 1};
  EXPECT_THROW(ps.subset(repeated), std::invalid_argument);
  const std::vector<std::size_t> outside = {1, 4};
  EXPECT_THROW(ps.subset(outside), std::out_of_range);
}

TEST(PointSetTest, CircleSubsetKeepsModulus) {
  const PointSet full = PointSet::circle(8, {0, 1, 2, 3, 4, 5, 6, 7});
  const std::vector<std::size_t> pick = {0, 3, 5};
  const PointSet sub = full.subset(pick);
  EXPECT_EQ(sub.circle_modulus(), 8);
  EXPECT_EQ(sub.key(0, 1), DistanceKey::chord_class_key(3));
  // Accessors for other domains refuse to answer.
  EXPECT_THROW(sub.plane_points(), std::logic_error);
}

TEST(PointSetTest, EqualityComparesDomainAndPoints) {
  const PointSet a = PointSet::plane({pp(0, 0), pp(1, 0)});
  const PointSet b = PointSet::plane({pp(0, 0), pp(1, 0)});
  const PointSet c = PointSet::plane({pp(1, 0), pp(0, 0)});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);  // order matters: indices are identities
}

}  // namespace
}  // namespace ddsub
