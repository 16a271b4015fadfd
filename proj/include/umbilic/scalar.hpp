// Exact rational scalars used by every algebraic routine in the library.
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace umbilic {

/// Exact rational p/q with arbitrary-precision parts. GMP keeps q > 0 and
/// gcd(p, q) = 1 after every operation. Expression templates are off so
/// `auto` never captures a lazy expression.
using Scalar = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                             boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline Scalar rational(long long num, long long den = 1) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  return Scalar(num) / Scalar(den);
}

inline int sign(const Scalar& s) { return s.sign(); }

inline bool is_zero(const Scalar& s) { return s.sign() == 0; }

inline Integer numerator(const Scalar& s) { return boost::multiprecision::numerator(s); }
inline Integer denominator(const Scalar& s) { return boost::multiprecision::denominator(s); }

inline double to_double(const Scalar& s) { return s.convert_to<double>(); }

/// "p/q" or "p" in lowest terms.
inline std::string to_string(const Scalar& s) { return s.str(); }

namespace detail {
inline bool is_integer_literal(std::string_view t) {
  if (t.empty()) return false;
  std::size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (k == t.size()) return false;
  for (; k < t.size(); ++k)
    if (t[k] < '0' || t[k] > '9') return false;
  return true;
}
}  // namespace detail

/// Parses "p", "-p" or "p/q" with integer p, q. Decimal points, exponents and
/// zero denominators are rejected (nullopt).
inline std::optional<Scalar> parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den)) return std::nullopt;
  if (den[0] == '-' || den[0] == '+') return std::nullopt;
  std::string n(num.front() == '+' ? num.substr(1) : num);
  Integer d{std::string(den)};
  if (d == 0) return std::nullopt;
  return Scalar(Integer(n)) / Scalar(d);
}

/// Exact power with non-negative exponent.
inline Scalar pow(const Scalar& base, unsigned e) {
  Scalar result = 1;
  Scalar b = base;
  while (e) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

/// Floor of a rational as an Integer.
inline Integer floor(const Scalar& s) {
  Integer n = numerator(s), d = denominator(s);
  Integer q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

}  // namespace umbilic
