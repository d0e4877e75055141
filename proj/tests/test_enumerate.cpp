#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "flatnet/enumerate.hpp"

using namespace flatnet;
using V = Vec2<QuadScalar>;

namespace {

// Lattice oracle for the square torus: every nonzero integer vector
// (primitive or not) is the holonomy of exactly one geodesic from the marked
// point to itself, since the marked point does not block straight lines.
long lattice_count_up_to_sign(double L) {
  long n = 0;
  const long m = static_cast<long>(std::floor(L)) + 1;
  for (long p = -m; p <= m; ++p)
    for (long q = -m; q <= m; ++q) {
      if (p == 0 && q == 0) continue;
      if (q < 0 || (q == 0 && p < 0)) continue;  // one per +-pair
      if (static_cast<double>(p) * p + static_cast<double>(q) * q <= L * L + 1e-12) ++n;
    }
  return n;
}

}  // namespace

TEST_CASE("square torus connections at small bounds") {
  auto t = square_torus();

  auto c1 = enumerate_saddle_connections(t, 1.0);
  REQUIRE(c1.size() == 2);
  CHECK(c1[0].hol == V{QuadScalar(0), QuadScalar(1)});
  CHECK(c1[1].hol == V{QuadScalar(1), QuadScalar(0)});

  auto c15 = enumerate_saddle_connections(t, 1.5);
  REQUIRE(c15.size() == 4);
  std::multiset<std::pair<double, double>> hols;
  for (const auto& c : c15) hols.insert(c.hol.dbl());
  CHECK(hols.count({1.0, 0.0}) == 1);
  CHECK(hols.count({0.0, 1.0}) == 1);
  CHECK(hols.count({1.0, 1.0}) == 1);
  CHECK(hols.count({-1.0, 1.0}) == 1);

  CHECK(enumerate_saddle_connections(t, 0.5).empty());
}

TEST_CASE("square torus counts match the lattice oracle up to L=10") {
  auto t = square_torus();
  for (double L : {2.0, 3.5, 5.0, 10.0}) {
    auto cs = enumerate_saddle_connections(t, L);
    CHECK(static_cast<long>(cs.size()) == lattice_count_up_to_sign(L));
  }
}

TEST_CASE("monotone in the length bound") {
  auto s = slit_double_cover(QuadScalar::sqrt_of(2) - QuadScalar(1));
  auto small = enumerate_saddle_connections(s, 1.2);
  auto big = enumerate_saddle_connections(s, 2.0);
  REQUIRE(small.size() <= big.size());
  // every small connection appears among the big ones
  for (const auto& c : small) {
    bool found = false;
    for (const auto& d : big)
      if (d.hol == c.hol && d.start_vclass == c.start_vclass && d.end_vclass == c.end_vclass) {
        found = true;
        break;
      }
    CHECK(found);
  }
}

TEST_CASE("slit cover: twin slit connections are kept separately") {
  QuadScalar lam = QuadScalar::sqrt_of(2) - QuadScalar(1);
  auto s = slit_double_cover(lam);
  auto cs = enumerate_saddle_connections(s, 0.9);
  // the slit itself gives two parallel geodesics of holonomy (lambda, 0),
  // plus the complementary horizontal pieces of holonomy (1-lambda, 0)
  int slit_copies = 0, comp_copies = 0;
  for (const auto& c : cs) {
    if (c.hol == V{lam, QuadScalar(0)}) ++slit_copies;
    if (c.hol == V{QuadScalar(1) - lam, QuadScalar(0)}) ++comp_copies;
  }
  CHECK(slit_copies == 2);
  CHECK(comp_copies == 2);
  // shortest connection overall is the slit
  CHECK(cs.front().hol == V{lam, QuadScalar(0)});
}

TEST_CASE("lengths are sorted and within bound") {
  auto s = slit_double_cover(QuadScalar(Rational(7, 8)));
  auto cs = enumerate_saddle_connections(s, 2.5);
  REQUIRE(!cs.empty());
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) CHECK(cs[i].len() <= cs[i + 1].len() + 1e-15);
  for (const auto& c : cs) CHECK(c.len() <= 2.5 + 1e-12);
}

TEST_CASE("budget produces the documented error") {
  auto t = square_torus();
  EnumerateOptions opt;
  opt.budget = 10;
  try {
    enumerate_saddle_connections(t, 50.0, opt);
    FAIL("expected BudgetExceeded");
  } catch (const DomainError& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}
