#pragma once

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ddsub {

using Integer = boost::multiprecision::cpp_int;

// Exact arbitrary-precision fraction, kept canonical by the backend:
// denominator > 0 and gcd(|numerator|, denominator) = 1 after every operation.
using Rational = boost::multiprecision::cpp_rational;

// Builds num/den in canonical form. Accepts a negative denominator.
inline Rational make_rational(Integer num, Integer den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(std::move(num), std::move(den));
}

struct RationalHash {
  std::size_t operator()(const Rational& r) const {
    return boost::hash<Rational>{}(r);
  }
};

inline std::optional<Integer> parse_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    pos = 1;
  }
  if (pos == s.size()) return std::nullopt;
  Integer value = 0;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  if (negative) value = -value;
  return value;
}

// Parses "n" or "n/d". The result is canonical even if the input is not.
// A zero or negative denominator is rejected.
inline std::optional<Rational> parse_rational(std::string_view s) {
  const std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) {
    auto num = parse_integer(s);
    if (!num) return std::nullopt;
    return Rational(*num);
  }
  auto num = parse_integer(s.substr(0, slash));
  auto den = parse_integer(s.substr(slash + 1));
  if (!num || !den || *den <= 0) return std::nullopt;
  return Rational(*num, *den);
}

// Parses any of "n", "n/d", "n.ddd" exactly. Used for CLI knobs where a
// decimal spelling is the natural input.
inline std::optional<Rational> parse_rational_or_decimal(std::string_view s) {
  const std::size_t dot = s.find('.');
  if (dot == std::string_view::npos) return parse_rational(s);
  if (s.find('/') != std::string_view::npos) return std::nullopt;
  std::string_view head = s.substr(0, dot);
  std::string_view tail = s.substr(dot + 1);
  bool negative = false;
  if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
    negative = (head[0] == '-');
    head = head.substr(1);
  }
  if (head.empty() && tail.empty()) return std::nullopt;
  Integer scaled = 0;
  for (std::string_view part : {head, tail}) {
    for (const char c : part) {
      if (c < '0' || c > '9') return std::nullopt;
      scaled = scaled * 10 + (c - '0');
    }
  }
  Integer den = 1;
  for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
  if (negative) scaled = -scaled;
  return Rational(scaled, den);
}

inline std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {

inline Integer pow10(std::int64_t e) {
  Integer r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace detail

// Renders an exact rational as a plain decimal with the given number of
// significant digits, rounding ties half-to-even. Zero renders as "0".
inline std::string format_decimal(const Rational& value, int significant = 12) {
  if (significant < 1) {
    throw std::invalid_argument("significant digits must be >= 1");
  }
  if (value == 0) return "0";
  const bool negative = value < 0;
  const Integer a = negative ? Integer(-numerator(value)) : numerator(value);
  const Integer b = denominator(value);

  // Decimal exponent e with 10^e <= a/b < 10^(e+1).
  const auto at_least_pow10 = [&](std::int64_t e) {
    if (e >= 0) return a >= b * detail::pow10(e);
    return a * detail::pow10(-e) >= b;
  };
  std::int64_t e = static_cast<std::int64_t>(a.str().size()) -
                   static_cast<std::int64_t>(b.str().size());
  while (!at_least_pow10(e)) --e;
  while (at_least_pow10(e + 1)) ++e;

  // scaled = (a/b) * 10^(significant-1-e), rounded half-to-even.
  const std::int64_t shift = significant - 1 - e;
  Integer num = a;
  Integer den = b;
  if (shift >= 0) {
    num *= detail::pow10(shift);
  } else {
    den *= detail::pow10(-shift);
  }
  Integer q = num / den;
  const Integer twice_rem = (num % den) * 2;
  if (twice_rem > den || (twice_rem == den && (q & 1) != 0)) ++q;

  std::string digits = q.str();
  if (static_cast<int>(digits.size()) > significant) {
    // Rounding carried into an extra digit (all nines case).
    digits.pop_back();
    ++e;
  }

  std::string out;
  if (negative) out += '-';
  if (e >= significant - 1) {
    out += digits;
    out.append(static_cast<std::size_t>(e - (significant - 1)), '0');
  } else if (e >= 0) {
    out.append(digits, 0, static_cast<std::size_t>(e + 1));
    out += '.';
    out.append(digits, static_cast<std::size_t>(e + 1), std::string::npos);
  } else {
    out += "0.";
    out.append(static_cast<std::size_t>(-e - 1), '0');
    out += digits;
  }
  // Trailing zeros after the point carry no information.
  if (out.find('.') != std::string::npos) {
    out.erase(out.find_last_not_of('0') + 1);
    if (out.back() == '.') out.pop_back();
  }
  return out;
}

// Exact dyadic rational of a finite double.
inline Rational rational_from_double(double x) {
  if (!(x == x) || x - x != 0.0) {
    throw std::invalid_argument("non-finite value has no rational form");
  }
  return Rational(x);
}

}  // namespace ddsub
