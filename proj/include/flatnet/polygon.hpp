#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "flatnet/errors.hpp"
#include "flatnet/kernels.hpp"

namespace flatnet {

template <class S>
using Chain = std::vector<Vec2<S>>;  // polygon as a ccw vertex chain

template <class K>
typename K::Scalar twice_area(const Chain<typename K::Scalar>& p) {
  typename K::Scalar a{};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& u = p[i];
    const auto& v = p[(i + 1) % p.size()];
    a += cross(u, v);
  }
  return a;
}

template <class K>
bool point_on_segment(const Vec2<typename K::Scalar>& a, const Vec2<typename K::Scalar>& b,
                      const Vec2<typename K::Scalar>& p) {
  if (K::sign(cross(b - a, p - a)) != 0) return false;
  return K::sign(dot(p - a, b - p)) >= 0;
}

// Proper or touching intersection of closed segments.
template <class K>
bool segments_intersect(const Vec2<typename K::Scalar>& a, const Vec2<typename K::Scalar>& b,
                        const Vec2<typename K::Scalar>& c, const Vec2<typename K::Scalar>& d) {
  const int d1 = K::sign(cross(b - a, c - a));
  const int d2 = K::sign(cross(b - a, d - a));
  const int d3 = K::sign(cross(d - c, a - c));
  const int d4 = K::sign(cross(d - c, b - c));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && point_on_segment<K>(a, b, c)) return true;
  if (d2 == 0 && point_on_segment<K>(a, b, d)) return true;
  if (d3 == 0 && point_on_segment<K>(c, d, a)) return true;
  if (d4 == 0 && point_on_segment<K>(c, d, b)) return true;
  return false;
}

// Validates a simple ccw polygon: positive area, no repeated vertices, no
// spikes, no crossing between non-adjacent edges.  Straight (angle pi)
// vertices are allowed; they model marked points sitting on an edge.
template <class K>
void validate_simple_polygon(const Chain<typename K::Scalar>& p) {
  const std::size_t n = p.size();
  require(n >= 3, ErrorCode::InvalidPolygon, "polygon needs at least 3 vertices");
  require(K::sign(twice_area<K>(p)) > 0, ErrorCode::NonPositiveArea,
          "polygon area must be positive (vertices counterclockwise)");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % n];
    require(!(a == b), ErrorCode::InvalidPolygon, "repeated vertex");
    const auto e0 = b - a;
    const auto e1 = p[(i + 2) % n] - b;
    if (K::sign(cross(e0, e1)) == 0)
      require(K::sign(dot(e0, e1)) > 0, ErrorCode::InvalidPolygon, "degenerate spike vertex");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      require(!segments_intersect<K>(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n]),
              ErrorCode::InvalidPolygon, "self-intersecting polygon");
    }
  }
}

// Ear-clipping triangulation; returns index triples into the chain.
template <class K>
std::vector<std::array<int, 3>> triangulate_polygon(const Chain<typename K::Scalar>& poly) {
  using V = Vec2<typename K::Scalar>;
  std::vector<int> idx(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<std::array<int, 3>> tris;

  auto inside_closed = [&](const V& a, const V& b, const V& c, const V& q) {
    return K::sign(cross(b - a, q - a)) >= 0 && K::sign(cross(c - b, q - b)) >= 0 &&
           K::sign(cross(a - c, q - c)) >= 0;
  };

  while (idx.size() > 3) {
    const std::size_t m = idx.size();
    bool clipped = false;
    for (std::size_t k = 0; k < m; ++k) {
      const int ia = idx[(k + m - 1) % m], ib = idx[k], ic = idx[(k + 1) % m];
      const V &a = poly[ia], &b = poly[ib], &c = poly[ic];
      if (K::sign(cross(b - a, c - b)) <= 0) continue;  // reflex or straight apex
      bool ear = true;
      for (std::size_t t = 0; t < m && ear; ++t) {
        const int iq = idx[t];
        if (iq == ia || iq == ib || iq == ic) continue;
        if (inside_closed(a, b, c, poly[iq])) ear = false;
      }
      if (!ear) continue;
      tris.push_back({ia, ib, ic});
      idx.erase(idx.begin() + static_cast<long>(k));
      clipped = true;
      break;
    }
    require(clipped, ErrorCode::InvalidPolygon, "ear clipping failed (polygon not simple?)");
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

// Clip a convex chain by the half-plane {p : cross(dir, p - a) >= 0}.
template <class K>
Chain<typename K::Scalar> clip_halfplane(const Chain<typename K::Scalar>& poly,
                                         const Vec2<typename K::Scalar>& a,
                                         const Vec2<typename K::Scalar>& dir) {
  using S = typename K::Scalar;
  Chain<S> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    const int sp = K::sign(cross(dir, p - a));
    const int sq = K::sign(cross(dir, q - a));
    if (sp >= 0) out.push_back(p);
    if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
      S t = cross(dir, a - p) / cross(dir, q - p);
      out.push_back(p + (q - p) * t);
    }
  }
  // drop duplicates introduced by vertices exactly on the boundary
  Chain<S> dedup;
  for (const auto& v : out)
    if (dedup.empty() || !(dedup.back() == v)) dedup.push_back(v);
  if (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  if (dedup.size() < 3) dedup.clear();
  return dedup;
}

template <class K>
Chain<typename K::Scalar> clip_convex(const Chain<typename K::Scalar>& subject,
                                      const Chain<typename K::Scalar>& convex_window) {
  auto out = subject;
  const std::size_t n = convex_window.size();
  for (std::size_t i = 0; i < n && !out.empty(); ++i) {
    const auto& a = convex_window[i];
    const auto& b = convex_window[(i + 1) % n];
    out = clip_halfplane<K>(out, a, b - a);
  }
  return out;
}

// Clip a convex chain to the axis-aligned rectangle [x0,x1] x [y0,y1].
template <class K>
Chain<typename K::Scalar> clip_to_rect(const Chain<typename K::Scalar>& poly,
                                       const typename K::Scalar& x0, const typename K::Scalar& y0,
                                       const typename K::Scalar& x1, const typename K::Scalar& y1) {
  using S = typename K::Scalar;
  using V = Vec2<S>;
  const S zero{}, one{S(1)};
  auto out = clip_halfplane<K>(poly, V{x0, y0}, V{zero, zero - one});  // x >= x0
  if (!out.empty()) out = clip_halfplane<K>(out, V{x1, y1}, V{zero, one});          // x <= x1
  if (!out.empty()) out = clip_halfplane<K>(out, V{x0, y0}, V{one, zero});          // y >= y0
  if (!out.empty()) out = clip_halfplane<K>(out, V{x1, y1}, V{zero - one, zero});   // y <= y1
  return out;
}

// Exact area of the union of convex chains, by slab decomposition: every
// vertex and edge-crossing x-coordinate bounds a slab inside which the
// vertical section's interval order is constant, so the union length is
// linear and the midpoint rule integrates it exactly.
template <class K>
typename K::Scalar union_area(const std::vector<Chain<typename K::Scalar>>& polys) {
  using S = typename K::Scalar;
  std::vector<S> xs;
  struct Edge { Vec2<S> a, b; };
  std::vector<Edge> edges;
  for (const auto& p : polys) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      xs.push_back(p[i].x);
      edges.push_back({p[i], p[(i + 1) % p.size()]});
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto &a = edges[i].a, &b = edges[i].b, &c = edges[j].a, &d = edges[j].b;
      const S den = cross(b - a, d - c);
      if (K::sign(den) == 0) continue;
      const S t = cross(c - a, d - c) / den;
      const S u = cross(c - a, b - a) / den;
      if (K::sign(t) >= 0 && K::sign(S(1) - t) >= 0 && K::sign(u) >= 0 && K::sign(S(1) - u) >= 0)
        xs.push_back(a.x + (b.x - a.x) * t);
    }
  }
  std::sort(xs.begin(), xs.end(), [](const S& l, const S& r) { return K::sign(l - r) < 0; });
  xs.erase(std::unique(xs.begin(), xs.end(), [](const S& l, const S& r) { return l == r; }),
           xs.end());

  S total{};
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    const S w = xs[s + 1] - xs[s];
    if (K::sign(w) <= 0) continue;
    const S xm = xs[s] + w / S(2);
    // vertical section of each polygon at x = xm
    std::vector<std::pair<S, S>> ivals;
    for (const auto& p : polys) {
      bool any = false;
      S lo{}, hi{};
      for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& a = p[i];
        const auto& b = p[(i + 1) % p.size()];
        const S dx = b.x - a.x;
        if (K::sign(dx) == 0) continue;
        const S t = (xm - a.x) / dx;
        if (K::sign(t) < 0 || K::sign(S(1) - t) < 0) continue;
        const S y = a.y + (b.y - a.y) * t;
        if (!any) { lo = hi = y; any = true; }
        else {
          if (K::sign(y - hi) > 0) hi = y;
          if (K::sign(y - lo) < 0) lo = y;
        }
      }
      if (any && K::sign(hi - lo) > 0) ivals.emplace_back(lo, hi);
    }
    std::sort(ivals.begin(), ivals.end(),
              [](const auto& l, const auto& r) { return K::sign(l.first - r.first) < 0; });
    S len{};
    bool open = false;
    S cur_lo{}, cur_hi{};
    for (const auto& iv : ivals) {
      if (!open) { cur_lo = iv.first; cur_hi = iv.second; open = true; continue; }
      if (K::sign(iv.first - cur_hi) <= 0) {
        if (K::sign(iv.second - cur_hi) > 0) cur_hi = iv.second;
      } else {
        len += cur_hi - cur_lo;
        cur_lo = iv.first;
        cur_hi = iv.second;
      }
    }
    if (open) len += cur_hi - cur_lo;
    total += len * w;
  }
  return total;
}

template <class K>
typename K::Scalar intersection_area(const Chain<typename K::Scalar>& a,
                                     const Chain<typename K::Scalar>& b) {
  auto c = clip_convex<K>(a, b);
  if (c.empty()) return typename K::Scalar{};
  return twice_area<K>(c) / typename K::Scalar(2);
}

}  // namespace flatnet
