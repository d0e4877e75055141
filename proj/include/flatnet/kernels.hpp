#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

#include "flatnet/quadratic.hpp"

namespace flatnet {

// High-precision float used by long geodesic traces, where double exponent
// range or mantissa would run out.
using BigFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

// A numeric kernel fixes the scalar type the geometry is computed over.
// ExactKernel gives exact predicates (construction, Delaunay ties, cross
// products); the float kernels serve rotated surfaces and long flows.
struct ExactKernel {
  using Scalar = QuadScalar;
  static constexpr bool exact = true;
  static int sign(const Scalar& s) { return s.sign(); }
  static double dbl(const Scalar& s) { return s.to_double(); }
  static Scalar from_double(double x) { return QuadScalar::from_double(x); }
};

struct DoubleKernel {
  using Scalar = double;
  static constexpr bool exact = false;
  static int sign(double s) { return (s > 0) - (s < 0); }
  static double dbl(double s) { return s; }
  static double from_double(double x) { return x; }
};

struct BigKernel {
  using Scalar = BigFloat;
  static constexpr bool exact = false;
  static int sign(const Scalar& s) { return s.sign(); }
  static double dbl(const Scalar& s) { return s.convert_to<double>(); }
  static Scalar from_double(double x) { return Scalar(x); }
};

template <class K>
typename K::Scalar scalar_cast(const QuadScalar& q);

template <>
inline QuadScalar scalar_cast<ExactKernel>(const QuadScalar& q) { return q; }

template <>
inline double scalar_cast<DoubleKernel>(const QuadScalar& q) { return q.to_double(); }

template <>
inline BigFloat scalar_cast<BigKernel>(const QuadScalar& q) {
  BigFloat v = BigFloat(q.rat());
  if (!q.is_rational()) v += BigFloat(q.coeff()) * sqrt(BigFloat(q.field_d()));
  return v;
}

template <class S>
struct Vec2 {
  S x{}, y{};
  Vec2() = default;
  Vec2(S px, S py) : x(std::move(px)), y(std::move(py)) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(const S& c) const { return {x * c, y * c}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2& o) const { return !(*this == o); }

  std::pair<double, double> dbl() const { return {flatnet::to_double(x), flatnet::to_double(y)}; }
};

inline double to_double(double x) { return x; }
inline double to_double(const BigFloat& x) { return x.convert_to<double>(); }

inline std::string scalar_key(const QuadScalar& s) { return s.str(); }
inline std::string scalar_key(double s) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", s);
  return buf;
}
inline std::string scalar_key(const BigFloat& s) { return s.str(40); }

template <class S>
std::pair<std::string, std::string> vec_key(const Vec2<S>& v) {
  return {scalar_key(v.x), scalar_key(v.y)};
}

template <class S>
S cross(const Vec2<S>& a, const Vec2<S>& b) { return a.x * b.y - a.y * b.x; }

template <class S>
S dot(const Vec2<S>& a, const Vec2<S>& b) { return a.x * b.x + a.y * b.y; }

template <class S>
S norm2(const Vec2<S>& a) { return a.x * a.x + a.y * a.y; }

template <class S>
double length(const Vec2<S>& a) { return std::sqrt(flatnet::to_double(norm2(a))); }

template <class K>
Vec2<typename K::Scalar> vec_cast(const Vec2<QuadScalar>& v) {
  return {scalar_cast<K>(v.x), scalar_cast<K>(v.y)};
}

// Membership of direction g in the corner sector swept counterclockwise from
// u to v, half-open: u included, v excluded.  Sectors of a vertex fan tile
// the cone under this convention, so every direction lies in exactly k of
// them where 2*pi*k is the cone angle.
template <class K>
bool in_sector(const Vec2<typename K::Scalar>& u, const Vec2<typename K::Scalar>& v,
               const Vec2<typename K::Scalar>& g) {
  const int cuv = K::sign(cross(u, v));
  if (cuv > 0) return K::sign(cross(u, g)) >= 0 && K::sign(cross(g, v)) > 0;
  if (cuv < 0) return !(K::sign(cross(v, g)) >= 0 && K::sign(cross(g, u)) > 0);
  // Straight corner (angle exactly pi).
  const int cug = K::sign(cross(u, g));
  return cug > 0 || (cug == 0 && K::sign(dot(u, g)) > 0);
}

}  // namespace flatnet
