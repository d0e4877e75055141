#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "flatnet/errors.hpp"

namespace flatnet {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact conversion; every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
  require(std::isfinite(x), ErrorCode::PreconditionViolated, "non-finite value");
  return Rational(x);
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline BigInt floor_rational(const Rational& r) {
  return floor_div(numerator(r), denominator(r));
}

// Largest integer s with s*s <= n.
inline BigInt isqrt_floor(const BigInt& n) {
  if (n < 0) fail(ErrorCode::PreconditionViolated, "isqrt of negative");
  BigInt s = boost::multiprecision::sqrt(n);
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

inline bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt s = isqrt_floor(n);
  return s * s == n;
}

inline bool is_square_free(const BigInt& n) {
  if (n < 0) return false;
  if (n <= 1) return true;
  BigInt m = n;
  for (BigInt p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return false;
    }
  }
  return true;
}

inline std::string rational_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

}  // namespace flatnet
