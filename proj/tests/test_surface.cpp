#include <catch2/catch_amalgamated.hpp>

#include "flatnet/surface.hpp"

using namespace flatnet;
using K = ExactKernel;
using V = Vec2<QuadScalar>;

namespace {

// Independent Gauss-Bonnet / Euler oracle: recompute cone angles by summing
// corner angles with atan2 and rounding the total to a multiple of 2*pi,
// and recompute genus from the Euler characteristic of the mesh.
template <class KK>
void check_gauss_bonnet(const Surface<KK>& s) {
  double excess = 0;
  for (const auto& vc : s.vertex_classes()) {
    double angle = 0;
    for (auto [t, i] : vc.corners) {
      auto [u, w] = s.corner_sector(t, i);
      auto [ux, uy] = u.dbl();
      auto [wx, wy] = w.dbl();
      double a = std::atan2(wy, wx) - std::atan2(uy, ux);
      if (a <= 0) a += 2 * M_PI;
      angle += a;
    }
    long k = std::lround(angle / (2 * M_PI));
    REQUIRE(std::abs(angle - 2 * M_PI * k) < 1e-9);
    REQUIRE(k == vc.turns);
    excess += 2 * M_PI * (k - 1);
  }
  REQUIRE(std::abs(excess - 2 * M_PI * (2 * s.genus() - 2)) < 1e-9);

  // Euler characteristic: V - E + F with E = 3F/2.
  const int F = s.num_tris();
  REQUIRE(F % 2 == 0);
  const int E = 3 * F / 2;
  const int Vn = s.num_singularities();
  REQUIRE(Vn - E + F == 2 - 2 * s.genus());
}

}  // namespace

TEST_CASE("unit square torus builds: g=1, one marked point, area 1") {
  auto t = square_torus();
  CHECK(t.genus() == 1);
  CHECK(t.num_singularities() == 1);
  CHECK(t.num_zeros() == 0);
  CHECK(t.num_marked() == 1);
  CHECK(t.vertex_classes()[0].turns == 1);
  CHECK(t.area() == QuadScalar(1));
  check_gauss_bonnet(t);
}

TEST_CASE("slit double cover: g=2, two 4pi cone points, area 2") {
  for (QuadScalar lam : {QuadScalar::sqrt_of(2) - QuadScalar(1), QuadScalar(Rational(7, 8))}) {
    auto s = slit_double_cover(lam);
    CHECK(s.genus() == 2);
    CHECK(s.num_singularities() == 2);
    CHECK(s.num_zeros() == 2);
    for (const auto& vc : s.vertex_classes()) CHECK(vc.turns == 2);
    CHECK(s.area() == QuadScalar(2));
    CHECK(s.num_tris() == 8);
    check_gauss_bonnet(s);
  }
}

TEST_CASE("rational slit length builds, out-of-range rejected") {
  CHECK_NOTHROW(slit_double_cover(QuadScalar(Rational(1, 2))));
  CHECK_THROWS_MATCHES(slit_double_cover(QuadScalar(1)), DomainError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("LambdaOutOfRange")));
  CHECK_THROWS_AS(slit_double_cover(QuadScalar(0)), DomainError);
}

TEST_CASE("mismatched edge vectors are rejected") {
  Chain<QuadScalar> sq{V{0, 0}, V{1, 0}, V{1, 1}, V{0, 1}};
  // left <-> top: edge vectors (0,-1) vs (-1,0), not opposite translates
  std::vector<Gluing> g{{EdgeRef{0, 3}, EdgeRef{0, 2}}, {EdgeRef{0, 0}, EdgeRef{0, 1}}};
  try {
    build_surface<K>({sq}, g);
    FAIL("expected EdgeVectorMismatch");
  } catch (const DomainError& e) {
    CHECK(e.code() == ErrorCode::EdgeVectorMismatch);
  }
}

TEST_CASE("unglued edge is rejected") {
  Chain<QuadScalar> sq{V{0, 0}, V{1, 0}, V{1, 1}, V{0, 1}};
  std::vector<Gluing> g{{EdgeRef{0, 0}, EdgeRef{0, 2}}};
  try {
    build_surface<K>({sq}, g);
    FAIL("expected UnpairedEdge");
  } catch (const DomainError& e) {
    CHECK(e.code() == ErrorCode::UnpairedEdge);
  }
}

TEST_CASE("gluing translations are consistent across the mesh") {
  auto s = slit_double_cover(QuadScalar::sqrt_of(2) - QuadScalar(1));
  for (int t = 0; t < s.num_tris(); ++t)
    for (int i = 0; i < 3; ++i) {
      const auto& tr = s.tri(t);
      const int pt = tr.nbr[i], pe = tr.nbr_edge[i];
      REQUIRE(pt >= 0);
      // partner of partner is self
      CHECK(s.tri(pt).nbr[pe] == t);
      CHECK(s.tri(pt).nbr_edge[pe] == i);
      // edge vectors opposite
      CHECK(s.edge_vec(t, i) + s.edge_vec(pt, pe) == V{});
      // crossing forward then backward is the identity shift
      CHECK(s.crossing_shift(t, i) + s.crossing_shift(pt, pe) == V{});
      // endpoint classes match up (reversed)
      CHECK(tr.vcls[i] == s.tri(pt).vcls[(pe + 1) % 3]);
    }
}

TEST_CASE("quarter turn is exact; general rotation is float") {
  auto t = square_torus();
  auto q = linear_transform(t, QuadScalar(0), -QuadScalar(1), QuadScalar(1), QuadScalar(0));
  CHECK(q.area() == QuadScalar(1));
  CHECK(q.genus() == 1);

  // rotate so x-axis becomes vertical: (a,b) -> (-b,a) up to float rounding
  auto r = rotate_to_vertical(t, V{QuadScalar(1), QuadScalar(0)});
  CHECK(r.area_dbl() == Catch::Approx(1.0).margin(1e-12));
  const auto& tr = r.tris()[0];
  (void)tr;

  // identity case
  auto r2 = rotate_to_vertical(t, V{QuadScalar(0), QuadScalar(1)});
  for (int i = 0; i < r2.num_tris(); ++i)
    for (int j = 0; j < 3; ++j) {
      auto [ex, ey] = square_torus().tri(i).v[j].dbl();
      CHECK(r2.tri(i).v[j].x == Catch::Approx(ex).margin(1e-15));
      CHECK(r2.tri(i).v[j].y == Catch::Approx(ey).margin(1e-15));
    }
  CHECK_THROWS_AS(rotate_to_vertical(t, V{QuadScalar(0), QuadScalar(0)}), DomainError);
}

TEST_CASE("rotation preserves pairwise flat data") {
  auto s = slit_double_cover(QuadScalar::sqrt_of(2) - QuadScalar(1));
  auto r = rotate_to_vertical(s, V{QuadScalar(1), QuadScalar(2)});
  CHECK(r.area_dbl() == Catch::Approx(2.0).margin(1e-12));
  // edge lengths preserved
  for (int t = 0; t < s.num_tris(); ++t)
    for (int i = 0; i < 3; ++i) {
      const double l0 = length(s.edge_vec(t, i));
      const double l1 = length(r.edge_vec(t, i));
      CHECK(l1 == Catch::Approx(l0).epsilon(1e-12));
    }
}
