#pragma once

#include <functional>
#include <map>
#include <vector>

#include "flatnet/surface.hpp"

namespace flatnet {

// One straight chart segment of a traced path, with path parameters s0..s1
// measured in units of the tracing direction.
template <class K>
struct ChartSegment {
  int tri;
  Vec2<typename K::Scalar> p0, p1;
  typename K::Scalar s0, s1;
};

template <class K>
struct TraceStop {
  enum class Kind { Completed, HitZero, Budget };
  Kind kind = Kind::Completed;
  int tri = -1;
  Vec2<typename K::Scalar> p;
  typename K::Scalar s{};  // parameter at the stop
  int vclass = -1;         // cone point class for HitZero
  int crossings = 0;
};

struct TraceOptions {
  long max_crossings = 2'000'000;
  bool throw_on_budget = true;
};

namespace detail {
struct NoopVertexFn {
  template <class S>
  void operator()(int /*vclass*/, const S& /*s*/) const {}
};
}  // namespace detail

// Traces p + s*dir for s in [0, s_max] across the mesh.  Marked points
// (cone angle exactly 2*pi) are flat and passed through; genuine cone points
// stop the trace.  seg() is invoked once per chart segment, including the
// final partial one; vertex_fn() once per marked point the ray passes through.
template <class K, class SegFn, class VertexFn = detail::NoopVertexFn>
TraceStop<K> trace_ray(const Surface<K>& surf, int tri, Vec2<typename K::Scalar> p,
                       const Vec2<typename K::Scalar>& dir, const typename K::Scalar& s_max,
                       SegFn&& seg, const TraceOptions& opt = {}, VertexFn&& vertex_fn = {}) {
  using S = typename K::Scalar;
  using V = Vec2<S>;
  TraceStop<K> stop;
  S s_total{};
  const S dd = dot(dir, dir);
  require(K::sign(dd) > 0, ErrorCode::ZeroDirection, "zero trace direction");

  for (long steps = 0;; ++steps) {
    if (steps > opt.max_crossings) {
      if (opt.throw_on_budget)
        fail(ErrorCode::TracingBudgetExceeded, "trace exceeded crossing budget");
      stop.kind = TraceStop<K>::Kind::Budget;
      stop.tri = tri;
      stop.p = p;
      stop.s = s_total;
      stop.crossings = static_cast<int>(steps);
      return stop;
    }
    const auto& tr = surf.tri(tri);

    // Earliest exit event: a vertex exactly on the ray, or an edge crossed
    // in its interior.
    bool have = false;
    bool at_vertex = false;
    int exit_idx = -1;  // edge index or vertex corner index
    S best_s{};
    for (int j = 0; j < 3; ++j) {
      const V w = tr.v[j] - p;
      if (K::sign(cross(dir, w)) == 0) {
        const S sj = dot(w, dir) / dd;
        if (K::sign(sj) > 0 && (!have || K::sign(sj - best_s) < 0)) {
          have = true;
          at_vertex = true;
          exit_idx = j;
          best_s = sj;
        }
      }
    }
    for (int i = 0; i < 3; ++i) {
      const V a = tr.v[i], e = tr.v[(i + 1) % 3] - tr.v[i];
      const S den = cross(dir, e);
      if (K::sign(den) == 0) continue;
      const S si = cross(a - p, e) / den;
      if (K::sign(si) <= 0) continue;
      const S u = cross(a - p, dir) / den;
      if (K::sign(u) <= 0 || K::sign(S(1) - u) <= 0) continue;  // endpoints are vertex events
      if (!have || K::sign(si - best_s) < 0) {
        have = false;  // replace any later vertex event
        have = true;
        at_vertex = false;
        exit_idx = i;
        best_s = si;
      }
    }
    require(have, ErrorCode::PreconditionViolated, "ray failed to exit triangle (bad start data)");

    const S remaining = s_max - s_total;
    if (K::sign(best_s - remaining) >= 0) {
      const V q = p + dir * remaining;
      seg(tri, p, q, s_total, s_max);
      stop.kind = TraceStop<K>::Kind::Completed;
      stop.tri = tri;
      stop.p = q;
      stop.s = s_max;
      stop.crossings = static_cast<int>(steps);
      return stop;
    }

    const V q = p + dir * best_s;
    seg(tri, p, q, s_total, s_total + best_s);
    s_total += best_s;

    if (at_vertex) {
      const int cls = tr.vcls[exit_idx];
      if (surf.vertex_classes()[cls].is_zero()) {
        stop.kind = TraceStop<K>::Kind::HitZero;
        stop.tri = tri;
        stop.p = q;
        stop.s = s_total;
        stop.vclass = cls;
        stop.crossings = static_cast<int>(steps);
        return stop;
      }
      // Marked point: flat, continue into the unique corner holding dir.
      vertex_fn(cls, s_total);
      auto [nt, ni] = surf.corner_containing(cls, dir);
      tri = nt;
      p = surf.tri(nt).v[ni];
    } else {
      const int nt = tr.nbr[exit_idx];
      p = q + surf.crossing_shift(tri, exit_idx);
      tri = nt;
    }
  }
}

template <class K>
TraceStop<K> trace_ray(const Surface<K>& surf, int tri, const Vec2<typename K::Scalar>& p,
                       const Vec2<typename K::Scalar>& dir, const typename K::Scalar& s_max,
                       const TraceOptions& opt = {}) {
  return trace_ray(surf, tri, p, dir, s_max,
                   [](int, const Vec2<typename K::Scalar>&, const Vec2<typename K::Scalar>&,
                      const typename K::Scalar&, const typename K::Scalar&) {}, opt);
}

// A straight path developed into chart pieces, with copies of pieces that lie
// exactly on a glued edge mirrored into the neighboring chart (so queries
// from either side can see them).
template <class K>
struct PieceSet {
  using S = typename K::Scalar;
  std::map<int, std::vector<ChartSegment<K>>> by_tri;
  S total{};

  void add(const ChartSegment<K>& c) { by_tri[c.tri].push_back(c); }
  const std::vector<ChartSegment<K>>* in_tri(int t) const {
    auto it = by_tri.find(t);
    return it == by_tri.end() ? nullptr : &it->second;
  }
};

template <class K>
PieceSet<K> trace_pieces(const Surface<K>& surf, int tri, const Vec2<typename K::Scalar>& p,
                         const Vec2<typename K::Scalar>& dir, const typename K::Scalar& s_max,
                         const TraceOptions& opt = {}) {
  using S = typename K::Scalar;
  PieceSet<K> out;
  auto stop = trace_ray(
      surf, tri, p, dir, s_max,
      [&](int t, const Vec2<S>& a, const Vec2<S>& b, const S& s0, const S& s1) {
        out.add({t, a, b, s0, s1});
      },
      opt);
  require(stop.kind == TraceStop<K>::Kind::Completed, ErrorCode::HitSingularity,
          "straight path runs into a cone point");
  out.total = s_max;

  // Mirror on-edge pieces into the adjacent chart.
  std::vector<ChartSegment<K>> mirrored;
  for (const auto& [t, segs] : out.by_tri) {
    for (const auto& c : segs) {
      const auto& tr = surf.tri(t);
      for (int i = 0; i < 3; ++i) {
        const auto &a = tr.v[i], &b = tr.v[(i + 1) % 3];
        if (point_on_segment<K>(a, b, c.p0) && point_on_segment<K>(a, b, c.p1)) {
          const auto shift = surf.crossing_shift(t, i);
          mirrored.push_back({tr.nbr[i], c.p0 + shift, c.p1 + shift, c.s0, c.s1});
        }
      }
    }
  }
  for (const auto& c : mirrored) out.add(c);
  return out;
}

// Horizontal arc [anchor, anchor + length), singularity-free in its interior.
template <class K>
struct HorizontalArc {
  using S = typename K::Scalar;
  int tri;
  Vec2<S> anchor;
  S len;
  PieceSet<K> pieces;
};

template <class K>
HorizontalArc<K> make_horizontal_arc(const Surface<K>& surf, int tri,
                                     const Vec2<typename K::Scalar>& anchor,
                                     const typename K::Scalar& len) {
  using S = typename K::Scalar;
  require(K::sign(len) > 0, ErrorCode::PreconditionViolated, "arc length must be positive");
  HorizontalArc<K> arc{tri, anchor, len, {}};
  arc.pieces = trace_pieces(surf, tri, anchor, Vec2<S>{S(1), S(0)}, len);
  return arc;
}

// Arc anchored at a chart point of an input polygon.
template <class K>
HorizontalArc<K> make_horizontal_arc_in_polygon(const Surface<K>& surf, int poly,
                                                const Vec2<typename K::Scalar>& anchor,
                                                const typename K::Scalar& len) {
  auto [tri, p] = surf.locate(poly, anchor);
  return make_horizontal_arc(surf, tri, p, len);
}

}  // namespace flatnet
