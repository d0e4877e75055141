#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "flatnet/rational.hpp"

namespace flatnet {

// Exact element a + b*sqrt(d) of a real quadratic field (d square-free, d >= 2)
// or of Q itself (d == 0, b == 0).  All arithmetic and sign tests are exact.
// Scalars with b == 0 embed into any field, so d acts as a tag that is fixed
// per surface and propagated through arithmetic.
class QuadScalar {
 public:
  QuadScalar() : a_(0), b_(0), d_(0) {}
  QuadScalar(int v) : a_(v), b_(0), d_(0) {}                 // NOLINT(google-explicit-constructor)
  QuadScalar(const Rational& a) : a_(a), b_(0), d_(0) {}     // NOLINT(google-explicit-constructor)
  QuadScalar(Rational a, Rational b, std::int64_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    normalize();
  }

  static QuadScalar sqrt_of(std::int64_t d) { return QuadScalar(0, 1, d); }
  static QuadScalar from_double(double x) { return QuadScalar(rational_from_double(x)); }

  const Rational& rat() const { return a_; }
  const Rational& coeff() const { return b_; }
  std::int64_t field_d() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  double to_double() const {
    double v = flatnet::to_double(a_);
    if (b_ != 0) v += flatnet::to_double(b_) * std::sqrt(static_cast<double>(d_));
    return v;
  }

  // Exact sign of a + b*sqrt(d).
  int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with b^2 d.
    Rational lhs = a_ * a_, rhs = b_ * b_ * d_;
    if (lhs == rhs) return 0;  // cannot happen for square-free d>1 unless both zero
    return (lhs > rhs) ? sa : sb;
  }

  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadScalar operator-() const { return QuadScalar(-a_, -b_, d_); }

  QuadScalar& operator+=(const QuadScalar& o) {
    std::int64_t d = merged_d(o);
    a_ += o.a_;
    b_ += o.b_;
    d_ = d;
    normalize();
    return *this;
  }
  QuadScalar& operator-=(const QuadScalar& o) { return *this += (-o); }

  QuadScalar& operator*=(const QuadScalar& o) {
    std::int64_t d = merged_d(o);
    Rational a = a_ * o.a_ + b_ * o.b_ * d;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = a;
    b_ = b;
    d_ = d;
    normalize();
    return *this;
  }

  QuadScalar& operator/=(const QuadScalar& o) {
    std::int64_t d = merged_d(o);
    Rational nrm = o.a_ * o.a_ - o.b_ * o.b_ * d;
    require(!(o.a_ == 0 && o.b_ == 0), ErrorCode::PreconditionViolated, "division by zero");
    require(nrm != 0, ErrorCode::PreconditionViolated, "division by zero norm");
    // 1/(c+e*sqrt d) = (c-e*sqrt d)/(c^2-e^2 d)
    QuadScalar inv((o.a_ / nrm), (-o.b_ / nrm), d);
    return *this *= inv;
  }

  friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
  friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
  friend QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
  friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }

  friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
    return (x - y).is_zero();
  }
  friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }
  friend bool operator<(const QuadScalar& x, const QuadScalar& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadScalar& x, const QuadScalar& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const QuadScalar& x, const QuadScalar& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const QuadScalar& x, const QuadScalar& y) { return (x - y).sign() >= 0; }

  QuadScalar abs() const { return sign() < 0 ? -*this : *this; }

  // Exact floor: the unique f with f <= value < f+1.
  BigInt floor() const {
    if (b_ == 0) return floor_rational(a_);
    BigInt f = floor_rational(a_);
    BigInt p = numerator(b_), q = denominator(b_);
    BigInt s = isqrt_floor(BigInt(d_) * p * p);  // floor(|p| sqrt d)
    f += (b_ > 0) ? floor_div(s, q) : -floor_div(s, q) - 1;
    while ((*this - QuadScalar(Rational(f))).sign() < 0) --f;
    while ((*this - QuadScalar(Rational(f + 1))).sign() >= 0) ++f;
    return f;
  }

  // Canonical text form: "p/q", or "p/q+r/s√d" / "p/q-r/s√d".
  std::string str() const {
    std::string s = rational_to_string(a_);
    if (b_ != 0) {
      Rational ab = b_ < 0 ? Rational(-b_) : b_;
      s += (b_ < 0 ? "-" : "+");
      s += rational_to_string(ab) + "√" + std::to_string(d_);
    }
    return s;
  }

 private:
  void normalize() {
    if (b_ == 0) d_ = 0;
  }
  std::int64_t merged_d(const QuadScalar& o) const {
    if (d_ == o.d_) return d_;
    if (b_ == 0) return o.d_;
    if (o.b_ == 0) return d_;
    fail(ErrorCode::MixedField,
         "cannot mix sqrt(" + std::to_string(d_) + ") with sqrt(" + std::to_string(o.d_) + ")");
  }

  Rational a_, b_;
  std::int64_t d_;
};

inline double to_double(const QuadScalar& q) { return q.to_double(); }
inline int sign(const QuadScalar& q) { return q.sign(); }

template <class Stream>
Stream& operator<<(Stream& os, const QuadScalar& q) {
  os << q.str();
  return os;
}

}  // namespace flatnet
