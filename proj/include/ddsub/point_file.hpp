#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ddsub/geometry.hpp"

namespace ddsub {

// Text format for point sets:
//   line 1: "ddpts 1"                  magic + format version
//   line 2: "plane" | "sphere" | "circle"
//   line 3: point count N (for circle: the modulus; no body follows)
//   body:   N lines, "x y" (plane) or "x y z" (sphere), coordinates written
//           as integers or num/den
// '#' starts a comment, blank lines are ignored.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

struct Record {
  std::size_t line;  // 1-based source line
  std::vector<std::string> tokens;
};

inline std::vector<Record> tokenize_point_file(std::string_view text) {
  std::vector<Record> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    Record record{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) record.tokens.emplace_back(line.substr(start, i - start));
    }
    if (!record.tokens.empty()) records.push_back(std::move(record));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return records;
}

inline Rational parse_coordinate(const std::string& token, std::size_t line) {
  const auto value = parse_rational(token);
  if (!value) {
    throw ParseError(line, "bad coordinate '" + token + "'");
  }
  return *value;
}

}  // namespace detail

inline PointSet parse_point_file(std::string_view text) {
  const auto records = detail::tokenize_point_file(text);
  std::size_t next = 0;
  const std::size_t eof_line =
      records.empty() ? 1 : records.back().line + 1;
  const auto take = [&](const char* what) -> const detail::Record& {
    if (next >= records.size()) {
      throw ParseError(eof_line, std::string("unexpected end of file, expected ") + what);
    }
    return records[next++];
  };

  const auto& magic = take("header 'ddpts 1'");
  if (magic.tokens != std::vector<std::string>{"ddpts", "1"}) {
    throw ParseError(magic.line, "expected header 'ddpts 1'");
  }

  const auto& domain_rec = take("a domain line");
  if (domain_rec.tokens.size() != 1) {
    throw ParseError(domain_rec.line, "expected a single domain token");
  }
  const std::string& domain = domain_rec.tokens[0];
  if (domain != "plane" && domain != "sphere" && domain != "circle") {
    throw ParseError(domain_rec.line, "unknown domain '" + domain + "'");
  }

  const auto& count_rec = take("a point count");
  if (count_rec.tokens.size() != 1) {
    throw ParseError(count_rec.line, "expected a single point count");
  }
  const auto n_parsed = parse_integer(count_rec.tokens[0]);
  if (!n_parsed) {
    throw ParseError(count_rec.line, "bad point count '" + count_rec.tokens[0] + "'");
  }
  if (*n_parsed < 0 || *n_parsed > 100'000'000) {
    throw ParseError(count_rec.line, "point count out of range");
  }
  const std::size_t n = n_parsed->convert_to<std::size_t>();

  if (domain == "circle") {
    if (n < 1) throw ParseError(count_rec.line, "circle modulus must be >= 1");
    if (next < records.size()) {
      throw ParseError(records[next].line, "circle files carry no point body");
    }
    std::vector<std::int64_t> indices(n);
    std::iota(indices.begin(), indices.end(), std::int64_t{0});
    return PointSet::circle(static_cast<std::int64_t>(n), std::move(indices));
  }

  const std::size_t dims = domain == "plane" ? 2 : 3;
  std::vector<PlanePoint> plane_points;
  std::vector<SpherePoint> sphere_points;
  std::unordered_set<std::string> seen;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& rec = take("a point line");
    if (rec.tokens.size() != dims) {
      throw ParseError(rec.line, "expected " + std::to_string(dims) +
                                     " coordinates, got " +
                                     std::to_string(rec.tokens.size()));
    }
    std::vector<Rational> coords;
    coords.reserve(dims);
    std::string canon;
    for (const auto& token : rec.tokens) {
      coords.push_back(detail::parse_coordinate(token, rec.line));
      canon += format_rational(coords.back());
      canon += ' ';
    }
    if (!seen.insert(canon).second) {
      throw ParseError(rec.line, "duplicate point");
    }
    if (domain == "plane") {
      plane_points.push_back(PlanePoint{coords[0], coords[1]});
    } else {
      try {
        sphere_points.emplace_back(coords[0], coords[1], coords[2]);
      } catch (const std::invalid_argument&) {
        throw ParseError(rec.line, "point is not on the unit sphere");
      }
    }
  }
  if (next < records.size()) {
    throw ParseError(records[next].line, "unexpected content after the point body");
  }
  return domain == "plane" ? PointSet::plane(std::move(plane_points))
                           : PointSet::sphere(std::move(sphere_points));
}

// Inverse of parse_point_file for representable sets. Circle sets must be the
// full equispaced family (indices 0..modulus-1 in order) — the format stores
// only the modulus.
inline std::string write_point_file(const PointSet& ps) {
  std::ostringstream out;
  out << "ddpts 1\n" << domain_name(ps.domain()) << '\n';
  switch (ps.domain()) {
    case Domain::plane:
      out << ps.size() << '\n';
      for (const auto& p : ps.plane_points()) {
        out << format_rational(p.x) << ' ' << format_rational(p.y) << '\n';
      }
      break;
    case Domain::sphere:
      out << ps.size() << '\n';
      for (const auto& p : ps.sphere_points()) {
        out << format_rational(p.x()) << ' ' << format_rational(p.y()) << ' '
            << format_rational(p.z()) << '\n';
      }
      break;
    case Domain::circle: {
      const auto& points = ps.circle_points();
      bool full = points.size() == static_cast<std::size_t>(ps.circle_modulus());
      for (std::size_t i = 0; full && i < points.size(); ++i) {
        full = points[i].index() == static_cast<std::int64_t>(i);
      }
      if (!full) {
        throw std::invalid_argument(
            "only full equispaced circle sets can be written");
      }
      out << ps.circle_modulus() << '\n';
      break;
    }
  }
  return out.str();
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path.string());
  return std::move(buffer).str();
}

// Writes via a sibling temp file and an atomic rename, so readers never see a
// half-written file.
inline void write_file_atomic(const std::filesystem::path& path,
                              std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() +
                             ": " + ec.message());
  }
}

}  // namespace ddsub
