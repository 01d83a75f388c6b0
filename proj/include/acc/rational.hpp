#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace acc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}
inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

// "p", "-p" or "p/q"; whitespace is not accepted.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s, bool allow_sign) -> std::optional<Integer> {
    if (s.empty()) return std::nullopt;
    std::size_t start = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) start = 1;
    if (start == s.size()) return std::nullopt;
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
    std::string digits(s.substr(s[0] == '+' ? 1 : 0));
    return Integer(digits);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_int(text, true);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto n = parse_int(text.substr(0, slash), true);
  auto d = parse_int(text.substr(slash + 1), false);
  if (!n || !d || *d == 0) return std::nullopt;
  return Rational(*n, *d);
}

inline std::string to_string(const Integer& z) { return z.str(); }

inline std::string to_string(const Rational& q) {
  if (is_integral(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline std::optional<std::int64_t> to_int64(const Integer& z) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
    return std::nullopt;
  return static_cast<std::int64_t>(z);
}

inline std::optional<std::int64_t> to_int64(const Rational& q) {
  if (!is_integral(q)) return std::nullopt;
  return to_int64(numerator(q));
}

/// Exact non-negative rational square root, if one exists.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Integer n = numerator(q), d = denominator(q);
  Integer rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}

/// Scales a non-zero vector to coprime integers with positive first non-zero
/// entry. The zero vector is returned unchanged.
inline RationalVector primitive_integer(const RationalVector& v) {
  Integer den = 1;
  for (const auto& x : v)
    if (x != 0) den = lcm(den, denominator(x));
  Integer g = 0;
  std::vector<Integer> ints;
  ints.reserve(v.size());
  for (const auto& x : v) {
    Integer z = numerator(x * den);
    ints.push_back(z);
    g = gcd(g, z < 0 ? Integer(-z) : z);
  }
  if (g == 0) return v;
  int sign = 1;
  for (const auto& z : ints)
    if (z != 0) {
      sign = z < 0 ? -1 : 1;
      break;
    }
  RationalVector out;
  out.reserve(v.size());
  for (const auto& z : ints) out.emplace_back(Integer(z / g) * sign);
  return out;
}

inline bool is_zero(const RationalVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline std::string to_string(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace acc
