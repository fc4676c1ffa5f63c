#include "ddsub/point_file.hpp"

#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "ddsub/generators.hpp"

namespace ddsub {
namespace {

PlanePoint pp(Rational x, Rational y) { return PlanePoint{std::move(x), std::move(y)}; }

std::size_t error_line(const std::string& text) {
  try {
    parse_point_file(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;  // parsed cleanly
}

TEST(ParsePointFile, MinimalPlaneFile) {
  const PointSet ps = parse_point_file("ddpts 1\nplane\n2\n0 0\n1 0\n");
  EXPECT_EQ(ps.domain(), Domain::plane);
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps.plane_points()[1], pp(1, 0));
}

TEST(ParsePointFile, CommentsBlankLinesAndCrlf) {
  const std::string text =
      "# corpus sample\r\n"
      "ddpts 1\r\n"
      "\r\n"
      "plane   # domain\r\n"
      "3\r\n"
      "0 0\r\n"
      "  1/2\t-2/3  \r\n"
      "\r\n"
      "4 5 # trailing note\r\n";
  const PointSet ps = parse_point_file(text);
  ASSERT_EQ(ps.size(), 3u);
  EXPECT_EQ(ps.plane_points()[1], pp(make_rational(1, 2), make_rational(-2, 3)));
  EXPECT_EQ(ps.plane_points()[2], pp(4, 5));
}

TEST(ParsePointFile, NonCanonicalFractionsAreNormalized) {
  const PointSet ps = parse_point_file("ddpts 1\nplane\n1\n2/4 0\n");
  EXPECT_EQ(ps.plane_points()[0].x, make_rational(1, 2));
}

TEST(ParsePointFile, SphereFileChecksTheNorm) {
  const PointSet ok =
      parse_point_file("ddpts 1\nsphere\n2\n0 0 1\n3/5 4/5 0\n");
  EXPECT_EQ(ok.domain(), Domain::sphere);
  EXPECT_EQ(ok.sphere_points()[1].x(), make_rational(3, 5));

  const std::string off = "ddpts 1\nsphere\n1\n1 1 1\n";
  EXPECT_EQ(error_line(off), 4u);
}

TEST(ParsePointFile, CircleFilesCarryOnlyTheModulus) {
  const PointSet ps = parse_point_file("ddpts 1\ncircle\n5\n");
  EXPECT_EQ(ps, circle_equispaced(5));
  EXPECT_EQ(error_line("ddpts 1\ncircle\n3\n0 0\n"), 4u);  // stray body
  EXPECT_EQ(error_line("ddpts 1\ncircle\n0\n"), 3u);
}

TEST(ParsePointFile, StructuredErrorsNameTheLine) {
  EXPECT_EQ(error_line(""), 1u);                                   // no header
  EXPECT_EQ(error_line("ddpts 2\nplane\n0\n"), 1u);                // bad version
  EXPECT_EQ(error_line("ddpts 1\ntorus\n1\n0 0\n"), 2u);           // bad domain
  EXPECT_EQ(error_line("ddpts 1\nplane\nmany\n"), 3u);             // bad count
  EXPECT_EQ(error_line("ddpts 1\nplane\n-1\n"), 3u);               // bad count
  EXPECT_EQ(error_line("ddpts 1\nplane\n1\n1 2 3\n"), 4u);         // extra coord
  EXPECT_EQ(error_line("ddpts 1\nplane\n1\nx 0\n"), 4u);           // bad token
  EXPECT_EQ(error_line("ddpts 1\nplane\n1\n1/0 0\n"), 4u);         // zero denom
  EXPECT_EQ(error_line("ddpts 1\nplane\n2\n0 0\n0 0\n"), 5u);      // duplicate
  EXPECT_EQ(error_line("ddpts 1\nplane\n2\n0 0\n"), 5u);           // missing point
  EXPECT_EQ(error_line("ddpts 1\nplane\n1\n0 0\n1 1\n"), 5u);      // extra point
}

TEST(WritePointFile, CanonicalBytesRoundTrip) {
  const std::string canonical = "ddpts 1\nplane\n2\n1/2 -2/3\n4 5\n";
  EXPECT_EQ(write_point_file(parse_point_file(canonical)), canonical);

  for (const PointSet& ps :
       {grid(3), random_plane(6, 9, 7), random_sphere(4, 2, 6),
        circle_equispaced(8)}) {
    EXPECT_EQ(parse_point_file(write_point_file(ps)), ps);
  }
}

TEST(WritePointFile, PartialCircleSetsAreNotRepresentable) {
  const PointSet partial = PointSet::circle(6, {0, 2, 4});
  EXPECT_THROW(write_point_file(partial), std::invalid_argument);
  EXPECT_NO_THROW(write_point_file(circle_equispaced(6)));
}

TEST(FileIo, AtomicWriteThenRead) {
  const auto dir = std::filesystem::temp_directory_path() / "ddsub_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "points.txt";
  const std::string payload = write_point_file(grid(2));

  write_file_atomic(path, payload);
  EXPECT_EQ(read_file(path), payload);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));

  // Overwrites are atomic replacements, not appends.
  write_file_atomic(path, "ddpts 1\ncircle\n4\n");
  EXPECT_EQ(parse_point_file(read_file(path)), circle_equispaced(4));

  EXPECT_THROW(read_file(dir / "absent.txt"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace ddsub
