#include <catch2/catch_amalgamated.hpp>

#include "flatnet/kernels.hpp"
#include "flatnet/quadratic.hpp"

using flatnet::BigInt;
using flatnet::QuadScalar;
using flatnet::Rational;

TEST_CASE("quadratic scalar arithmetic is exact and closed") {
  QuadScalar r2 = QuadScalar::sqrt_of(2);
  QuadScalar lam = r2 - QuadScalar(1);  // sqrt(2) - 1

  CHECK((r2 * r2) == QuadScalar(2));
  CHECK((lam * (r2 + QuadScalar(1))) == QuadScalar(1));  // (sqrt2-1)(sqrt2+1) = 1
  CHECK((QuadScalar(1) / lam) == r2 + QuadScalar(1));

  QuadScalar x(Rational(1, 2), Rational(1, 3), 2);
  QuadScalar y = x * x;
  CHECK(y.rat() == Rational(1, 4) + Rational(2, 9));
  CHECK(y.coeff() == Rational(1, 3));
}

TEST_CASE("sign tests survive catastrophic cancellation") {
  QuadScalar r2 = QuadScalar::sqrt_of(2);
  // 17*sqrt(2) - 24 = 0.04163... tiny but positive
  QuadScalar t = QuadScalar(17) * r2 - QuadScalar(24);
  CHECK(t.sign() == 1);
  CHECK((-t).sign() == -1);
  // 12/17 is a convergent of sqrt(2)/2; the defect has a known sign
  QuadScalar u = r2 / QuadScalar(2) - QuadScalar(Rational(12, 17));
  CHECK(u.sign() == 1);
  CHECK((u - u).sign() == 0);
  CHECK(t.to_double() == Catch::Approx(17 * std::sqrt(2.0) - 24).epsilon(1e-14));
}

TEST_CASE("mixed fields are rejected, rationals embed anywhere") {
  QuadScalar a = QuadScalar::sqrt_of(2), b = QuadScalar::sqrt_of(3);
  CHECK_THROWS_AS(a + b, flatnet::DomainError);
  QuadScalar c = QuadScalar(Rational(1, 2));
  CHECK((a + c).field_d() == 2);
  CHECK((c + b).field_d() == 3);
}

TEST_CASE("floor of quadratic irrationals is exact") {
  QuadScalar r2 = QuadScalar::sqrt_of(2);
  CHECK(r2.floor() == 1);
  CHECK((-r2).floor() == -2);
  CHECK((QuadScalar(100) * r2).floor() == 141);
  CHECK(QuadScalar(Rational(7, 2)).floor() == 3);
  CHECK(QuadScalar(Rational(-7, 2)).floor() == -4);
  // big magnitudes
  QuadScalar big = QuadScalar(Rational(BigInt("1000000000000000000000"), 1)) * r2;
  BigInt f = big.floor();
  CHECK(f == BigInt("1414213562373095048801"));
}

TEST_CASE("float view keeps 2^-48 relative accuracy") {
  QuadScalar v = QuadScalar(Rational(1, 3), Rational(7, 11), 5);
  double expect = 1.0 / 3.0 + 7.0 / 11.0 * std::sqrt(5.0);
  CHECK(std::abs(v.to_double() - expect) <= std::abs(expect) * 4e-15);
}

TEST_CASE("double to rational conversion is exact") {
  double x = 0.1;
  Rational r = flatnet::rational_from_double(x);
  CHECK(flatnet::to_double(r) == x);
  CHECK(denominator(r) == BigInt(1) << 55);
}

TEST_CASE("string form is canonical") {
  QuadScalar q(Rational(1, 2), Rational(-1, 3), 2);
  CHECK(q.str() == "1/2-1/3√2");
  CHECK(QuadScalar(Rational(-3)).str() == "-3");
}
