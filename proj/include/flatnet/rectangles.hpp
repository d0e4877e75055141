#pragma once

#include <optional>
#include <set>
#include <vector>

#include "flatnet/tracing.hpp"

namespace flatnet {

// An immersed axis-aligned rectangle, stored as its development: a set of
// (chart, translation) sheets with the clipped polygon piece each contributes.
// Piece coordinates live in the rectangle frame (anchor at the origin).
template <class K>
struct RectangleImm {
  using S = typename K::Scalar;
  struct Sheet {
    int tri;
    Vec2<S> tau;     // chart point q develops to q + tau
    Chain<S> piece;  // convex, ccw, inside [0,w] x [0,h]
  };

  int anchor_tri = -1;
  Vec2<S> anchor;
  S width{}, height{};
  std::vector<Sheet> sheets;
  S measure{};
  int max_multiplicity = 1;
  bool zero_in_interior = false;

  double measure_dbl() const { return flatnet::to_double(measure); }
  S product() const { return width * height; }
  bool embedded() const { return max_multiplicity == 1 && !zero_in_interior; }

  // Membership of a chart point in the closed image.
  bool contains(int tri, const Vec2<S>& p) const {
    for (const auto& sh : sheets) {
      if (sh.tri != tri) continue;
      const Vec2<S> q = p + sh.tau;
      bool in = !sh.piece.empty();
      for (std::size_t i = 0; i < sh.piece.size() && in; ++i) {
        const auto& a = sh.piece[i];
        const auto& b = sh.piece[(i + 1) % sh.piece.size()];
        if (K::sign(cross(b - a, q - a)) < 0) in = false;
      }
      if (in) return true;
    }
    return false;
  }
};

struct RectangleOptions {
  long max_sheets = 20000;
};

// Develops the rectangle [0,w] x [0,h] anchored at a chart point.  Never
// fails on cone points: the zero_in_interior flag records whether a cone
// point lies strictly inside (callers reject when immersion is required).
template <class K>
RectangleImm<K> develop_rectangle(const Surface<K>& surf, int tri,
                                  const Vec2<typename K::Scalar>& anchor,
                                  const typename K::Scalar& w, const typename K::Scalar& h,
                                  const RectangleOptions& opt = {}) {
  using S = typename K::Scalar;
  using V = Vec2<S>;
  require(K::sign(w) > 0 && K::sign(h) > 0, ErrorCode::PreconditionViolated,
          "rectangle dimensions must be positive");
  RectangleImm<K> rect;
  rect.anchor_tri = tri;
  rect.anchor = anchor;
  rect.width = w;
  rect.height = h;

  const S zero{}, two(2);
  auto strictly_inside = [&](const V& q) {
    return K::sign(q.x) > 0 && K::sign(w - q.x) > 0 && K::sign(q.y) > 0 && K::sign(h - q.y) > 0;
  };

  // Seed the flood fill from charts holding interior points of the rectangle
  // (the anchor's own triangle may touch it only at a corner).
  std::set<std::tuple<int, std::string, std::string>> visited;
  std::vector<std::pair<int, V>> queue;
  auto seed = [&](int st, const V& tau) {
    auto [kx, ky] = vec_key(tau);
    if (visited.insert({st, kx, ky}).second) queue.emplace_back(st, tau);
  };
  seed(tri, V{} - anchor);
  const std::pair<std::pair<int, int>, std::pair<int, int>> fracs[] = {
      {{1, 2}, {1, 2}}, {{1, 3}, {2, 3}}, {{2, 3}, {1, 3}}};
  for (auto [fx, fy] : fracs) {
    const V off{w * S(fx.first) / S(fx.second), h * S(fy.first) / S(fy.second)};
    try {
      auto stop = trace_ray(surf, tri, anchor, off, S(1));
      if (stop.kind == TraceStop<K>::Kind::Completed)
        seed(stop.tri, off - stop.p);  // dev(stop.p) = off
    } catch (const DomainError&) {
      // blocked diagonal: another seed will do
    }
  }

  while (!queue.empty()) {
    auto [t, tau] = queue.back();
    queue.pop_back();
    require(static_cast<long>(rect.sheets.size()) < opt.max_sheets, ErrorCode::GeometryBudget,
            "rectangle development exceeded sheet budget");
    const auto& tr = surf.tri(t);
    Chain<S> dev{tr.v[0] + tau, tr.v[1] + tau, tr.v[2] + tau};
    Chain<S> piece = clip_to_rect<K>(dev, zero, zero, w, h);
    if (piece.empty() || K::sign(twice_area<K>(piece)) <= 0) continue;
    for (int j = 0; j < 3; ++j)
      if (surf.vertex_classes()[tr.vcls[j]].is_zero() && strictly_inside(dev[j]))
        rect.zero_in_interior = true;
    rect.sheets.push_back({t, tau, piece});

    for (int i = 0; i < 3; ++i) {
      // expand across edge i when the open segment meets the open rectangle
      Chain<S> seg{dev[i], dev[(i + 1) % 3]};
      const V a = dev[i], b = dev[(i + 1) % 3];
      // clip the segment to the closed rectangle, then test its midpoint
      V p = a, q = b;
      bool alive = true;
      auto chop = [&](int axis, int side, const S& bound) {
        if (!alive) return;
        auto val = [&](const V& z) { return axis == 0 ? z.x : z.y; };
        int sp = K::sign(side > 0 ? bound - val(p) : val(p) - bound);
        int sq = K::sign(side > 0 ? bound - val(q) : val(q) - bound);
        if (sp < 0 && sq < 0) { alive = false; return; }
        if (sp >= 0 && sq >= 0) return;
        const S tcut = (bound - val(p)) / (val(q) - val(p));
        const V m = p + (q - p) * tcut;
        if (sp < 0) p = m; else q = m;
      };
      chop(0, 1, w);   // x <= w
      chop(0, -1, zero);  // x >= 0
      chop(1, 1, h);
      chop(1, -1, zero);
      if (!alive) continue;
      const V mid = (p + q) * (S(1) / two);
      if (!strictly_inside(mid)) continue;
      const int nt = tr.nbr[i];
      const V tau2 = tau - surf.crossing_shift(t, i);
      auto [kx, ky] = vec_key(tau2);
      if (visited.insert({nt, kx, ky}).second) queue.emplace_back(nt, tau2);
    }
  }

  // measure: per chart, area of the union of this rectangle's pulled-back pieces
  std::map<int, std::vector<Chain<S>>> per_chart;
  for (const auto& sh : rect.sheets) {
    Chain<S> back;
    for (const auto& v : sh.piece) back.push_back(v - sh.tau);
    per_chart[sh.tri].push_back(std::move(back));
  }
  S total{};
  int maxmult = rect.sheets.empty() ? 0 : 1;
  for (const auto& [t, pieces] : per_chart) {
    total += union_area<K>(pieces);
    for (std::size_t i = 0; i < pieces.size(); ++i)
      for (std::size_t j = i + 1; j < pieces.size(); ++j) {
        auto ij = clip_convex<K>(pieces[i], pieces[j]);
        if (ij.empty() || K::sign(twice_area<K>(ij)) <= 0) continue;
        maxmult = std::max(maxmult, 2);
        for (std::size_t k = j + 1; k < pieces.size(); ++k) {
          auto ijk = clip_convex<K>(ij, pieces[k]);
          if (!ijk.empty() && K::sign(twice_area<K>(ijk)) > 0) {
            maxmult = std::max(maxmult, 3);
          }
        }
      }
  }
  rect.measure = total;
  rect.max_multiplicity = maxmult;
  return rect;
}

// Vertical distance from a chart point to the closed rectangle image, at most
// cutoff; searches both the upward and downward leaf.  Returns nullopt when
// the rectangle is not reached; throws SingularityHit when a leaf runs into a
// cone point before reaching the rectangle or the cutoff on both sides.
template <class K>
std::optional<double> vertical_distance(const Surface<K>& surf, int tri,
                                        const Vec2<typename K::Scalar>& p,
                                        const RectangleImm<K>& rect, double cutoff) {
  using S = typename K::Scalar;
  using V = Vec2<S>;
  require(cutoff > 0, ErrorCode::PreconditionViolated, "cutoff must be positive");
  if (rect.contains(tri, p)) return 0.0;

  // pieces per chart in chart coordinates
  std::map<int, std::vector<Chain<S>>> per_chart;
  for (const auto& sh : rect.sheets) {
    Chain<S> back;
    for (const auto& v : sh.piece) back.push_back(v - sh.tau);
    per_chart[sh.tri].push_back(std::move(back));
  }

  const S cut = K::from_double(cutoff);
  std::optional<double> best;
  bool blocked = false;
  double blocked_at = 0;

  for (int dirsign : {1, -1}) {
    const V dir{S(0), S(dirsign)};
    std::optional<S> entry;
    auto stop = trace_ray(
        surf, tri, p, dir, cut,
        [&](int t, const V& a, const V& b, const S& s0, const S& s1) {
          if (entry) return;
          auto it = per_chart.find(t);
          if (it == per_chart.end()) return;
          const S ylo = dirsign > 0 ? a.y : b.y;
          const S yhi = dirsign > 0 ? b.y : a.y;
          for (const auto& piece : it->second) {
            // vertical line x = a.x through the convex piece
            bool any = false;
            S lo{}, hi{};
            const std::size_t n = piece.size();
            for (std::size_t i = 0; i < n; ++i) {
              const V u = piece[i], v = piece[(i + 1) % n];
              const S dx = v.x - u.x;
              if (K::sign(dx) == 0) {
                if (K::sign(u.x - a.x) == 0) {
                  for (const V* z : {&u, &v}) {
                    if (!any) { lo = hi = z->y; any = true; }
                    else {
                      if (K::sign(z->y - hi) > 0) hi = z->y;
                      if (K::sign(z->y - lo) < 0) lo = z->y;
                    }
                  }
                }
                continue;
              }
              const S tt = (a.x - u.x) / dx;
              if (K::sign(tt) < 0 || K::sign(S(1) - tt) < 0) continue;
              const S y = u.y + (v.y - u.y) * tt;
              if (!any) { lo = hi = y; any = true; }
              else {
                if (K::sign(y - hi) > 0) hi = y;
                if (K::sign(y - lo) < 0) lo = y;
              }
            }
            if (!any) continue;
            // earliest parameter s in [s0,s1] with y(s) in [lo,hi]
            if (K::sign(hi - ylo) < 0 || K::sign(lo - yhi) > 0) continue;
            S se;
            if (dirsign > 0) {
              // y rises from a.y: entry at max(lo, a.y)
              se = K::sign(lo - a.y) > 0 ? s0 + (lo - a.y) : s0;
            } else {
              // y falls from a.y: entry at min(hi, a.y)
              se = K::sign(a.y - hi) > 0 ? s0 + (a.y - hi) : s0;
            }
            if (!entry || K::sign(se - *entry) < 0) entry = se;
          }
        },
        TraceOptions{});
    if (entry) {
      const double d = flatnet::to_double(*entry);
      if (!best || d < *best) best = d;
    } else if (stop.kind == TraceStop<K>::Kind::HitZero) {
      blocked = true;
      blocked_at = flatnet::to_double(stop.s);
    }
  }
  if (best) return best;
  if (blocked) throw SingularityHit(blocked_at);
  return std::nullopt;
}

// First candidate rectangle from which both points are K-visible.
template <class K>
std::optional<std::size_t> are_k_reachable(const Surface<K>& surf, int tri_x,
                                           const Vec2<typename K::Scalar>& x, int tri_y,
                                           const Vec2<typename K::Scalar>& y, double kvis,
                                           const std::vector<RectangleImm<K>>& candidates) {
  require(kvis >= 0, ErrorCode::PreconditionViolated, "K must be nonnegative");
  for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
    const auto& r = candidates[idx];
    const double bound = kvis * flatnet::to_double(r.height);
    const double cutoff = bound + 1e-12 + 1e-9 * std::abs(bound);
    try {
      auto dx = vertical_distance(surf, tri_x, x, r, std::max(cutoff, 1e-9));
      if (!dx || *dx > bound * (1 + 1e-12) + 1e-15) continue;
      auto dy = vertical_distance(surf, tri_y, y, r, std::max(cutoff, 1e-9));
      if (!dy || *dy > bound * (1 + 1e-12) + 1e-15) continue;
      return idx;
    } catch (const SingularityHit&) {
      continue;  // leaf blocked: candidate not usable for this pair
    }
  }
  return std::nullopt;
}

}  // namespace flatnet
