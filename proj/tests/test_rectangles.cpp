#include <catch2/catch_amalgamated.hpp>

#include "flatnet/delaunay.hpp"
#include "flatnet/rectangles.hpp"

using namespace flatnet;
using K = ExactKernel;
using V = Vec2<QuadScalar>;

static QuadScalar qd(double x) { return QuadScalar::from_double(x); }

TEST_CASE("embedded rectangle on the torus has measure w*h") {
  auto t = square_torus();
  auto [tri, p] = t.locate(0, V{qd(0.25), qd(0.25)});
  auto r = develop_rectangle(t, tri, p, qd(0.5), qd(0.25));
  CHECK(r.measure == qd(0.5) * qd(0.25));
  CHECK(r.max_multiplicity == 1);
  CHECK(r.embedded());
  CHECK(r.contains(tri, V{qd(0.5), qd(0.3)}));
  CHECK(!r.contains(tri, V{qd(0.8), qd(0.6)}));
}

TEST_CASE("rectangle wrapping the torus overlaps itself") {
  auto t = square_torus();
  auto [tri, p] = t.locate(0, V{qd(0.25), qd(0.125)});
  // height 1.5 wraps the vertical circumference once: multiplicity 2
  auto r = develop_rectangle(t, tri, p, qd(0.25), qd(1.5));
  CHECK(r.max_multiplicity == 2);
  CHECK(to_double(r.measure) == Catch::Approx(0.25 * 1.0).margin(1e-12));  // full column
  // height 2.5 covers the column twice and part a third time
  auto r3 = develop_rectangle(t, tri, p, qd(0.25), qd(2.5));
  CHECK(r3.max_multiplicity == 3);
}

TEST_CASE("zero inside the rectangle is flagged on the slit cover") {
  auto s = slit_double_cover(QuadScalar::sqrt_of(2) - QuadScalar(1));
  auto [tri, p] = s.locate(0, V{qd(0.25), qd(0.75)});
  // a tall box over the slit endpoint (0,0)=(0,1): crosses the cone point
  auto r = develop_rectangle(s, tri, p, qd(0.5), qd(0.5));
  CHECK(r.zero_in_interior);
  // a small box clear of the endpoints is embedded
  auto [tri2, p2] = s.locate(0, V{qd(0.3), qd(0.3)});
  auto r2 = develop_rectangle(s, tri2, p2, qd(0.2), qd(0.2));
  CHECK(!r2.zero_in_interior);
  CHECK(r2.embedded());
  CHECK(r2.measure == qd(0.2) * qd(0.2));
}

TEST_CASE("vertical distance on the torus") {
  auto t = square_torus();
  // R = [0,1) x [0, 0.1) anchored near the origin; x = (0.5, 0.3)
  auto [rt, rp] = t.locate(0, V{qd(0.001), qd(0.0)});
  auto r = develop_rectangle(t, rt, rp, qd(0.998), qd(0.1));
  auto [xt, xp] = t.locate(0, V{qd(0.5), qd(0.3)});

  auto d = vertical_distance(t, xt, xp, r, 2.0);
  REQUIRE(d.has_value());
  CHECK(*d == Catch::Approx(0.2).margin(1e-12));  // downward

  // inside: distance zero
  auto d0 = vertical_distance(t, rt, V{qd(0.5), qd(0.05)}, r, 1.0);
  REQUIRE(d0.has_value());
  CHECK(*d0 == 0.0);

  // cutoff too small
  auto dn = vertical_distance(t, xt, xp, r, 0.05);
  CHECK(!dn.has_value());
}

TEST_CASE("k-reachability witness search") {
  auto t = square_torus();
  auto [rt, rp] = t.locate(0, V{qd(0.2), qd(0.0)});
  auto r = develop_rectangle(t, rt, rp, qd(0.6), qd(0.1));
  std::vector<RectangleImm<K>> cands{r};

  auto [xt, xp] = t.locate(0, V{qd(0.5), qd(0.3)});   // distance 0.2 above
  auto [yt, yp] = t.locate(0, V{qd(0.4), qd(0.15)});  // distance 0.05

  // vertical distances 0.2 and 0.05 against K*height = K*0.1
  CHECK(are_k_reachable(t, xt, xp, yt, yp, 2.0, cands).has_value());
  CHECK(!are_k_reachable(t, xt, xp, yt, yp, 1.0, cands).has_value());
  CHECK(!are_k_reachable(t, xt, xp, yt, yp, 2.0, {}).has_value());
}

TEST_CASE("delaunay counts: torus 2/3, slit cover 8/12") {
  auto dt = delaunay_triangulation(square_torus());
  CHECK(dt.num_triangles() == 2);
  CHECK(dt.num_edges() == 3);
  CHECK(dt.surface.num_singularities() == 1);

  auto ds = delaunay_triangulation(slit_double_cover(QuadScalar::sqrt_of(2) - QuadScalar(1)));
  CHECK(ds.num_triangles() == 8);
  CHECK(ds.num_edges() == 12);
  CHECK(ds.surface.num_singularities() == 2);
  CHECK(ds.surface.genus() == 2);

  // Euler relation |tris| = 2(2g-2+r), |edges| = 3(2g-2+r)
  for (const auto* d : {&dt, &ds}) {
    const int nu = 2 * d->surface.genus() - 2 + d->surface.num_singularities();
    CHECK(d->num_triangles() == 2 * nu);
    CHECK(d->num_edges() == 3 * nu);
  }
}

TEST_CASE("flips from a sheared torus settle quickly") {
  for (int shear = 1; shear <= 5; ++shear) {
    auto t = parallelogram_torus<K>(V{QuadScalar(1), QuadScalar(0)},
                                    V{QuadScalar(shear), QuadScalar(1)});
    auto dt = delaunay_triangulation(t);
    CHECK(dt.flips <= 50);
    CHECK(dt.num_triangles() == 2);
    // the Delaunay torus has all edges of squared length <= 2
    for (const auto& e : dt.edges) CHECK(to_double(norm2(e.hol)) <= 2.0 + 1e-12);
  }
}

TEST_CASE("empty circumdisk property via exact disk development") {
  QuadScalar lam = QuadScalar::sqrt_of(2) - QuadScalar(1);
  for (const auto& s : {square_torus(), slit_double_cover(lam)}) {
    auto d = delaunay_triangulation(s);
    for (int t = 0; t < d.surface.num_tris(); ++t) {
      // develop the bounding box of the immersed circumdisk; no mesh vertex
      // may land strictly inside the circle (exact comparison)
      const double R = std::sqrt(to_double(d.circumradius2[t]));
      const QuadScalar Rq = qd(R * (1 + 1e-12) + 1e-15);
      const auto c = d.circumcenter[t];
      const V anchor{c.x - Rq, c.y - Rq};
      auto box = develop_rectangle(d.surface, t, anchor, Rq * QuadScalar(2), Rq * QuadScalar(2));
      const V center_dev{Rq, Rq};
      for (const auto& sh : box.sheets) {
        for (int j = 0; j < 3; ++j) {
          const V q = d.surface.tri(sh.tri).v[j] + sh.tau;
          const QuadScalar dist2 = norm2(q - center_dev);
          CHECK(K::sign(dist2 - d.circumradius2[t]) >= 0);
        }
      }
    }
  }
}
