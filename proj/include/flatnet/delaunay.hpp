#pragma once

#include <vector>

#include "flatnet/enumerate.hpp"
#include "flatnet/surface.hpp"

namespace flatnet {

namespace detail {

// Strictly-inside-circumcircle predicate for ccw (a,b,c); > 0 iff d inside.
// Float kernels use a relative tolerance so near-cocircular data is treated
// as cocircular rather than flipped forever.
template <class K>
int incircle_sign(const Vec2<typename K::Scalar>& a, const Vec2<typename K::Scalar>& b,
                  const Vec2<typename K::Scalar>& c, const Vec2<typename K::Scalar>& d) {
  using S = typename K::Scalar;
  const Vec2<S> A = a - d, B = b - d, C = c - d;
  const S a2 = norm2(A), b2 = norm2(B), c2 = norm2(C);
  const S det = A.x * (B.y * c2 - C.y * b2) - A.y * (B.x * c2 - C.x * b2) +
                a2 * (B.x * C.y - C.x * B.y);
  if constexpr (K::exact) {
    return K::sign(det);
  } else {
    const double scale = flatnet::to_double(a2) + flatnet::to_double(b2) + flatnet::to_double(c2);
    const double tol = 1e-12 * scale * scale;
    const double dd = flatnet::to_double(det);
    if (dd > tol) return 1;
    if (dd < -tol) return -1;
    return 0;
  }
}

// Develops the apex of the triangle across edge (t,i) into t's chart.
template <class K>
Vec2<typename K::Scalar> developed_apex(const Surface<K>& s, int t, int i) {
  const int pt = s.tri(t).nbr[i], pe = s.tri(t).nbr_edge[i];
  return s.tri(pt).v[(pe + 2) % 3] - s.crossing_shift(t, i);
}

// In-place flip of edge (t,i) on a raw triangle array.
template <class K>
void flip_edge(std::vector<typename Surface<K>::Tri>& tris, int t, int i,
               const Vec2<typename K::Scalar>& d_in_t) {
  using Tri = typename Surface<K>::Tri;
  const int tp = tris[t].nbr[i], pe = tris[t].nbr_edge[i];
  const Tri T = tris[t], Tp = tris[tp];
  const auto a = T.v[i], b = T.v[(i + 1) % 3], c = T.v[(i + 2) % 3];
  const int ca = T.vcls[i], cb = T.vcls[(i + 1) % 3], cc = T.vcls[(i + 2) % 3];
  const int cd = Tp.vcls[(pe + 2) % 3];

  // old outward slots -> new slots
  auto remap = [&](std::pair<int, int> q) -> std::pair<int, int> {
    if (q == std::make_pair(t, (i + 1) % 3)) return {tp, 1};
    if (q == std::make_pair(t, (i + 2) % 3)) return {t, 2};
    if (q == std::make_pair(tp, (pe + 1) % 3)) return {t, 0};
    if (q == std::make_pair(tp, (pe + 2) % 3)) return {tp, 0};
    return q;
  };
  const std::pair<int, int> p_ad = remap({Tp.nbr[(pe + 1) % 3], Tp.nbr_edge[(pe + 1) % 3]});
  const std::pair<int, int> p_db = remap({Tp.nbr[(pe + 2) % 3], Tp.nbr_edge[(pe + 2) % 3]});
  const std::pair<int, int> p_bc = remap({T.nbr[(i + 1) % 3], T.nbr_edge[(i + 1) % 3]});
  const std::pair<int, int> p_ca = remap({T.nbr[(i + 2) % 3], T.nbr_edge[(i + 2) % 3]});

  Tri U;  // (a, d, c) in chart t
  U.src_poly = -1;
  U.v = {a, d_in_t, c};
  U.vcls = {ca, cd, cc};
  Tri V;  // (d, b, c) in chart t
  V.src_poly = -1;
  V.v = {d_in_t, b, c};
  V.vcls = {cd, cb, cc};

  tris[t] = U;
  tris[tp] = V;
  auto link = [&](int lt, int le, std::pair<int, int> q) {
    tris[lt].nbr[le] = q.first;
    tris[lt].nbr_edge[le] = q.second;
    tris[q.first].nbr[q.second] = lt;
    tris[q.first].nbr_edge[q.second] = le;
  };
  link(t, 0, p_ad);
  link(t, 2, p_ca);
  link(tp, 0, p_db);
  link(tp, 1, p_bc);
  link(t, 1, {tp, 2});
}

}  // namespace detail

template <class K>
struct DelaunayTriangulation {
  Surface<K> surface;  // same flat surface, Delaunay mesh
  int flips = 0;
  std::vector<Vec2<typename K::Scalar>> circumcenter;  // per triangle, own chart
  std::vector<typename K::Scalar> circumradius2;
  std::vector<SaddleConn<typename K::Scalar>> edges;   // canonical undirected

  int num_triangles() const { return surface.num_tris(); }
  int num_edges() const { return static_cast<int>(edges.size()); }
};

// Exact circumcenter of triangle t in its own chart.
template <class K>
Vec2<typename K::Scalar> circumcenter_of(const Surface<K>& s, int t) {
  using S = typename K::Scalar;
  const auto& tr = s.tri(t);
  const Vec2<S> A = tr.v[0], b = tr.v[1] - A, c = tr.v[2] - A;
  const S det = S(2) * cross(b, c);
  const S b2 = norm2(b), c2 = norm2(c);
  const S ux = (c.y * b2 - b.y * c2) / det;
  const S uy = (b.x * c2 - c.x * b2) / det;
  return {A.x + ux, A.y + uy};
}

// Lawson flips from the current mesh until every interior edge satisfies the
// empty-circumdisk condition.  Exactly cocircular configurations are ties;
// they are canonicalized to the shorter (then lexicographically smaller)
// diagonal, so the output does not depend on the input triangulation.
template <class K>
DelaunayTriangulation<K> delaunay_triangulation(const Surface<K>& input) {
  using S = typename K::Scalar;
  using V = Vec2<S>;

  Surface<K> s = map_surface<K>(input, [](const V& v) { return v; });
  auto& tris = SurfaceAccess::tris(s);
  const long max_rounds = 400 + 40L * static_cast<long>(tris.size()) * tris.size();
  int flips = 0;

  auto apex_in_t = [&](int t, int i) {
    const int pt = tris[t].nbr[i], pe = tris[t].nbr_edge[i];
    const V shift = tris[pt].v[pe] - tris[t].v[(i + 1) % 3];
    return tris[pt].v[(pe + 2) % 3] - shift;
  };

  long rounds = 0;
  for (bool dirty = true; dirty;) {
    dirty = false;
    require(++rounds <= max_rounds, ErrorCode::BudgetExceeded, "flip sequence did not settle");
    for (int t = 0; t < static_cast<int>(tris.size()) && !dirty; ++t)
      for (int i = 0; i < 3 && !dirty; ++i) {
        const V d = apex_in_t(t, i);
        if (detail::incircle_sign<K>(tris[t].v[i], tris[t].v[(i + 1) % 3], tris[t].v[(i + 2) % 3],
                                     d) > 0) {
          detail::flip_edge<K>(tris, t, i, d);
          ++flips;
          dirty = true;
        }
      }
  }

  // cocircular ties: canonicalize to (shorter, lexicographically smaller) diagonal
  auto canon_key = [&](V h) {
    if (K::sign(h.y) < 0 || (K::sign(h.y) == 0 && K::sign(h.x) < 0)) h = -h;
    return h;
  };
  auto diag_less = [&](const V& x, const V& y) {
    const int c2 = K::sign(norm2(x) - norm2(y));
    if (c2 != 0) return c2 < 0;
    const V cx = canon_key(x), cy = canon_key(y);
    const int sx = K::sign(cx.x - cy.x);
    if (sx != 0) return sx < 0;
    return K::sign(cx.y - cy.y) < 0;
  };
  for (bool dirty = true; dirty;) {
    dirty = false;
    require(++rounds <= max_rounds, ErrorCode::BudgetExceeded, "tie canonicalization cycled");
    for (int t = 0; t < static_cast<int>(tris.size()) && !dirty; ++t)
      for (int i = 0; i < 3 && !dirty; ++i) {
        const int pt = tris[t].nbr[i];
        if (std::make_pair(t, i) > std::make_pair(pt, tris[t].nbr_edge[i])) continue;
        const V d = apex_in_t(t, i);
        const V a = tris[t].v[i], b = tris[t].v[(i + 1) % 3], c = tris[t].v[(i + 2) % 3];
        if (detail::incircle_sign<K>(a, b, c, d) != 0) continue;
        // flip is geometric only if the quad (a,d,b,c) is strictly convex
        if (K::sign(cross(d - a, c - a)) <= 0 || K::sign(cross(c - b, d - b)) >= 0) continue;
        const V cur = b - a, alt = c - d;
        if (diag_less(alt, cur)) {
          detail::flip_edge<K>(tris, t, i, d);
          ++flips;
          dirty = true;
        }
      }
  }

  SurfaceAccess::vclasses(s) = compute_vertex_classes<K>(tris);

  DelaunayTriangulation<K> out{std::move(s), flips, {}, {}, {}};
  const auto& surf = out.surface;
  for (int t = 0; t < surf.num_tris(); ++t) {
    const V cc = circumcenter_of(surf, t);
    out.circumcenter.push_back(cc);
    out.circumradius2.push_back(norm2(cc - surf.tri(t).v[0]));
  }
  for (auto [t, i] : surf.undirected_edges()) {
    SaddleConn<S> e;
    e.hol = surf.edge_vec(t, i);
    e.start_vclass = surf.tri(t).vcls[i];
    e.end_vclass = surf.tri(t).vcls[(i + 1) % 3];
    e.path = {t * 3 + i};
    out.edges.push_back(std::move(e));
  }
  return out;
}

}  // namespace flatnet
