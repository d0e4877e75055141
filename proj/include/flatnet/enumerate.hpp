#pragma once

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include "flatnet/tracing.hpp"

namespace flatnet {

struct EnumerateOptions {
  long budget = 6'000'000;  // cone nodes + walk crossings
};

namespace detail {

// Unfolds the surface around each vertex corner, collecting every geodesic
// segment of length <= L that starts and ends at vertices of the mesh with
// no cone point in its interior.  Marked (2*pi) points do not block rays;
// a ray through one is continued by a separate straight walk.
template <class K>
struct ConeSearch {
  using S = typename K::Scalar;
  using V = Vec2<S>;

  const Surface<K>& surf;
  S L2;
  double L;
  long budget;
  long used = 0;

  struct Discovery {
    V hol;
    int a, b;
    std::vector<int> path;
  };
  std::vector<Discovery> found;
  std::vector<V> pending_walks;

  ConeSearch(const Surface<K>& s, double limit, long b)
      : surf(s), L2(K::from_double(limit) * K::from_double(limit)), L(limit), budget(b) {}

  void spend(long n = 1) {
    used += n;
    require(used <= budget, ErrorCode::BudgetExceeded,
            "saddle connection enumeration exceeded budget (length bound too large?)");
  }

  void emit(const V& hol, int start_cls, int end_cls, std::vector<int> path) {
    V h = hol;
    const bool flip = K::sign(h.y) < 0 || (K::sign(h.y) == 0 && K::sign(h.x) < 0);
    if (flip) {
      h = -h;
      std::reverse(path.begin(), path.end());
      for (int& e : path) {
        const int t = e / 3, i = e % 3;
        e = surf.tri(t).nbr[i] * 3 + surf.tri(t).nbr_edge[i];
      }
    }
    found.push_back({h, std::min(start_cls, end_cls), std::max(start_cls, end_cls),
                     std::move(path)});
  }

  // min_s > 0 skips vertex encounters up to that parameter: a walk spawned
  // behind a marked vertex must only report what lies strictly beyond it.
  void walk_ray(int t, int i, const V& dir, const S& min_s = S(0)) {
    const int start_cls = surf.tri(t).vcls[i];
    const double cap = L / std::sqrt(flatnet::to_double(norm2(dir))) * (1 + 1e-9) + 1e-12;
    const S s_cap = K::from_double(cap);
    bool done = false;
    TraceOptions opt;
    opt.max_crossings = std::max<long>(budget - used, 1);
    auto stop = trace_ray(
        surf, t, surf.tri(t).v[i], dir, s_cap,
        [&](int, const V&, const V&, const S&, const S&) { spend(); }, opt,
        [&](int cls, const S& s) {
          if (done || K::sign(s - min_s) <= 0) return;
          const V hol = dir * s;
          if (K::sign(norm2(hol) - L2) > 0) {
            done = true;
            return;
          }
          emit(hol, start_cls, cls, {});
        });
    if (stop.kind == TraceStop<K>::Kind::HitZero && !done &&
        K::sign(stop.s - min_s) > 0) {
      const V hol = dir * stop.s;
      if (K::sign(norm2(hol) - L2) <= 0) emit(hol, start_cls, stop.vclass, {});
    }
  }

  // Sound reachability prune: least |P + u(Q-P)|^2 over the part of [0,1]
  // cut out by the cone rays must not exceed L^2.
  bool segment_reachable(const V& P, const V& Q, const V& lo, const V& hi) {
    const V e = Q - P;
    const S e2 = norm2(e);
    if (K::sign(e2) == 0) return false;
    S u0 = S(0), u1 = S(1);
    S cut[2];
    int ncut = 0;
    for (const V* ray : {&lo, &hi}) {
      const S den = cross(*ray, e);
      if (K::sign(den) == 0) continue;
      cut[ncut++] = (S(0) - cross(*ray, P)) / den;
    }
    if (ncut == 2) {
      const bool swapped = K::sign(cut[0] - cut[1]) > 0;
      const S a = swapped ? cut[1] : cut[0];
      const S b = swapped ? cut[0] : cut[1];
      if (K::sign(a - u0) > 0) u0 = a;
      if (K::sign(b - u1) < 0) u1 = b;
    }
    if (K::sign(u1 - u0) < 0) return false;
    S ustar = (S(0) - dot(P, e)) / e2;
    if (K::sign(ustar - u0) < 0) ustar = u0;
    if (K::sign(ustar - u1) > 0) ustar = u1;
    const V x = P + e * ustar;
    return K::sign(norm2(x) - L2) <= 0;
  }

  static bool in_open_cone(const V& lo, const V& hi, const V& g) {
    return K::sign(cross(lo, g)) > 0 && K::sign(cross(g, hi)) > 0;
  }

  // Crosses directed edge (ct,ce), whose endpoints develop to A (= v[ce])
  // and B (= v[ce+1]).  tau develops the entered chart; the open cone
  // (lo,hi) spans < pi and every ray in it crosses the open segment (A,B).
  void expand(int ct, int ce, const V& tau, const V& A, const V& B, const V& lo, const V& hi,
              std::vector<int> path, int start_cls) {
    spend();
    path.push_back(ct * 3 + ce);
    const int nt = surf.tri(ct).nbr[ce];
    const int ne = surf.tri(ct).nbr_edge[ce];
    const auto& tr = surf.tri(nt);
    const int wi = (ne + 2) % 3;
    const V W = tr.v[wi] + tau;
    // identifications: v[ne] ~ B, v[ne+1] ~ A
    // edge (nt, ne+1) joins A and W; edge (nt, ne+2) joins W and B.

    auto recurse_side = [&](const V& SA, const V& SB, int edge_idx, const V& clo, const V& chi) {
      if (K::sign(cross(clo, chi)) <= 0) return;
      if (!segment_reachable(SA, SB, clo, chi)) return;
      const V tau2 = tau - surf.crossing_shift(nt, edge_idx);
      expand(nt, edge_idx, tau2, SA, SB, clo, chi, path, start_cls);
    };

    const int ab = K::sign(cross(A, B));
    if (ab == 0) return;  // radial segment: no open cone crosses it
    const bool a_first = ab > 0;  // A angularly before B (ccw)

    if (in_open_cone(lo, hi, W)) {
      if (K::sign(norm2(W) - L2) <= 0) {
        emit(W, start_cls, tr.vcls[wi], path);
        if (!surf.vertex_classes()[tr.vcls[wi]].is_zero()) pending_walks.push_back(W);
      }
      if (a_first) {
        recurse_side(A, W, (ne + 1) % 3, lo, W);
        recurse_side(W, B, (ne + 2) % 3, W, hi);
      } else {
        recurse_side(B, W, (ne + 2) % 3, lo, W);
        recurse_side(W, A, (ne + 1) % 3, W, hi);
      }
    } else {
      const bool w_before = K::sign(cross(W, lo)) >= 0;  // W at or before lo
      if (a_first) {
        if (w_before) recurse_side(W, B, (ne + 2) % 3, lo, hi);
        else recurse_side(A, W, (ne + 1) % 3, lo, hi);
      } else {
        if (w_before) recurse_side(W, A, (ne + 1) % 3, lo, hi);
        else recurse_side(B, W, (ne + 2) % 3, lo, hi);
      }
    }
  }

  void run_corner(int t, int i) {
    const auto& tr = surf.tri(t);
    auto [u_out, u_back] = surf.corner_sector(t, i);
    walk_ray(t, i, u_out);

    // strict interior of the corner sector crosses the opposite edge (t,i+1),
    // whose endpoints develop exactly to u_out and u_back.
    if (K::sign(cross(u_out, u_back)) <= 0) return;  // degenerate (never for triangles)
    if (!segment_reachable(u_out, u_back, u_out, u_back)) return;
    pending_walks.clear();
    const int ce = (i + 1) % 3;
    const V tau = (V{} - tr.v[i]) - surf.crossing_shift(t, ce);
    expand(t, ce, tau, u_out, u_back, u_out, u_back, {}, tr.vcls[i]);
    const auto walks = pending_walks;
    for (const auto& d : walks) walk_ray(t, i, d, S(1));
  }
};

}  // namespace detail

// All saddle connections of length <= L, one representative per unoriented
// connection, sorted by (length, holonomy).  Parallel twins (equal holonomy
// and endpoints but distinct geodesics) appear as separate entries.
template <class K>
std::vector<SaddleConn<typename K::Scalar>> enumerate_saddle_connections(
    const Surface<K>& surf, double L, const EnumerateOptions& opt = {}) {
  using S = typename K::Scalar;
  require(L > 0, ErrorCode::PreconditionViolated, "length bound must be positive");
  detail::ConeSearch<K> search(surf, L, opt.budget);
  for (int c = 0; c < surf.num_singularities(); ++c)
    for (auto [t, i] : surf.vertex_classes()[c].corners) search.run_corner(t, i);

  using Key = std::tuple<std::string, std::string, int, int>;
  std::map<Key, std::vector<typename detail::ConeSearch<K>::Discovery>> groups;
  for (auto& d : search.found)
    groups[Key{scalar_key(d.hol.x), scalar_key(d.hol.y), d.a, d.b}].push_back(d);

  std::vector<SaddleConn<S>> out;
  for (auto& [k, v] : groups) {
    (void)k;
    std::sort(v.begin(), v.end(), [](const auto& l, const auto& r) { return l.path < r.path; });
    // every unoriented connection is discovered exactly twice (once per
    // orientation), so each pair of discoveries yields one output entry
    for (std::size_t j = 0; j + 1 < v.size(); j += 2) {
      SaddleConn<S> sc;
      sc.hol = v[j].hol;
      sc.start_vclass = v[j].a;
      sc.end_vclass = v[j].b;
      sc.path = v[j].path;
      out.push_back(std::move(sc));
    }
  }
  std::sort(out.begin(), out.end(), [](const SaddleConn<S>& a, const SaddleConn<S>& b) {
    const double la = a.len(), lb = b.len();
    if (la != lb) return la < lb;
    const int sx = K::sign(a.hol.x - b.hol.x);
    if (sx != 0) return sx < 0;
    const int sy = K::sign(a.hol.y - b.hol.y);
    if (sy != 0) return sy < 0;
    if (a.start_vclass != b.start_vclass) return a.start_vclass < b.start_vclass;
    if (a.end_vclass != b.end_vclass) return a.end_vclass < b.end_vclass;
    return a.path < b.path;
  });
  return out;
}

}  // namespace flatnet
