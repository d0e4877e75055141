#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "flatnet/polygon.hpp"

namespace flatnet {

struct EdgeRef {
  int poly = 0;
  int edge = 0;
  friend bool operator==(const EdgeRef& a, const EdgeRef& b) {
    return a.poly == b.poly && a.edge == b.edge;
  }
  friend bool operator<(const EdgeRef& a, const EdgeRef& b) {
    return a.poly != b.poly ? a.poly < b.poly : a.edge < b.edge;
  }
};

using Gluing = std::pair<EdgeRef, EdgeRef>;

template <class S>
struct SaddleConn {
  Vec2<S> hol;
  int start_vclass = -1;
  int end_vclass = -1;
  std::vector<int> path;  // directed mesh-edge ids crossed; may be empty
  double len() const { return length(hol); }
};

// A closed translation surface, stored both as the gluing of the input
// polygons (kept verbatim for file round trips) and as a triangulated mesh
// that all geometric algorithms run on.  Each triangle keeps absolute
// coordinates in the chart of its source polygon; crossing a glued edge is a
// translation between charts.  Immutable after construction.
template <class K>
class Surface {
 public:
  using Kernel = K;
  using S = typename K::Scalar;
  using V = Vec2<S>;

  struct Tri {
    std::array<V, 3> v;
    std::array<int, 3> nbr{{-1, -1, -1}};
    std::array<int, 3> nbr_edge{{-1, -1, -1}};
    std::array<int, 3> vcls{{-1, -1, -1}};
    int src_poly = -1;
  };

  struct VertexClass {
    int turns = 0;                                   // cone angle 2*pi*turns
    std::vector<std::pair<int, int>> corners;        // (tri, corner) fan
    bool is_zero() const { return turns > 1; }
  };

  const std::vector<Chain<S>>& polygons() const { return polygons_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }
  const std::vector<Tri>& tris() const { return tris_; }
  const Tri& tri(int t) const { return tris_[t]; }
  int num_tris() const { return static_cast<int>(tris_.size()); }
  const std::vector<VertexClass>& vertex_classes() const { return vclasses_; }
  int num_singularities() const { return static_cast<int>(vclasses_.size()); }
  int num_zeros() const {
    int n = 0;
    for (const auto& c : vclasses_) n += c.is_zero() ? 1 : 0;
    return n;
  }
  int num_marked() const { return num_singularities() - num_zeros(); }
  int genus() const { return genus_; }
  const S& area() const { return area_; }
  double area_dbl() const { return K::dbl(area_); }
  std::int64_t field_d() const { return field_d_; }

  // Directed mesh edge (t,i) runs tri(t).v[i] -> tri(t).v[i+1].
  V edge_vec(int t, int i) const { return tris_[t].v[(i + 1) % 3] - tris_[t].v[i]; }

  // Chart shift when crossing edge (t,i) into the neighbor triangle: a point
  // p in chart t appears at p + shift in the neighbor's chart.
  V crossing_shift(int t, int i) const {
    const Tri& a = tris_[t];
    const Tri& b = tris_[a.nbr[i]];
    return b.v[a.nbr_edge[i]] - a.v[(i + 1) % 3];
  }

  // One chart position of vertex class c (first corner in its fan).
  std::pair<int, V> vertex_position(int c) const {
    auto [t, i] = vclasses_[c].corners.front();
    return {t, tris_[t].v[i]};
  }

  // Corner sector directions at corner (t,i): ccw from outgoing edge to the
  // reversed incoming edge.
  std::pair<V, V> corner_sector(int t, int i) const {
    const Tri& tr = tris_[t];
    return {tr.v[(i + 1) % 3] - tr.v[i], tr.v[(i + 2) % 3] - tr.v[i]};
  }

  // The corner of vertex class c whose half-open sector contains direction g.
  // For marked points (turns == 1) the corner is unique.
  std::pair<int, int> corner_containing(int c, const V& g) const {
    for (auto [t, i] : vclasses_[c].corners) {
      auto [u, w] = corner_sector(t, i);
      if (in_sector<K>(u, w, g)) return {t, i};
    }
    fail(ErrorCode::PreconditionViolated, "no corner contains direction (degenerate data)");
  }

  bool point_in_tri(int t, const V& p) const {
    const Tri& tr = tris_[t];
    for (int i = 0; i < 3; ++i)
      if (K::sign(cross(tr.v[(i + 1) % 3] - tr.v[i], p - tr.v[i])) < 0) return false;
    return true;
  }

  // Locate a point given in the chart of an input polygon.
  std::pair<int, V> locate(int poly, const V& p) const {
    for (int t = 0; t < num_tris(); ++t)
      if (tris_[t].src_poly == poly && point_in_tri(t, p)) return {t, p};
    fail(ErrorCode::PreconditionViolated, "point not inside the given polygon");
  }

  // Canonical undirected edge list: (t,i) lexicographically before partner.
  std::vector<std::pair<int, int>> undirected_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int t = 0; t < num_tris(); ++t)
      for (int i = 0; i < 3; ++i) {
        const int pt = tris_[t].nbr[i], pe = tris_[t].nbr_edge[i];
        if (std::make_pair(t, i) <= std::make_pair(pt, pe)) out.emplace_back(t, i);
      }
    return out;
  }

  friend struct SurfaceAccess;

 private:
  Surface() = default;

  std::vector<Chain<S>> polygons_;
  std::vector<Gluing> gluings_;
  std::vector<Tri> tris_;
  std::vector<VertexClass> vclasses_;
  S area_{};
  int genus_ = 0;
  std::int64_t field_d_ = 0;
};

namespace detail {
inline std::int64_t field_of(const QuadScalar& q) { return q.field_d(); }
inline std::int64_t field_of(double) { return 0; }
inline std::int64_t field_of(const BigFloat&) { return 0; }
}  // namespace detail

// Rebuilds vertex classes (corner fans + exact cone angles) from mesh
// combinatorics; used at construction and after Delaunay flips.
template <class K>
std::vector<typename Surface<K>::VertexClass> compute_vertex_classes(
    std::vector<typename Surface<K>::Tri>& tris) {
  using S = typename K::Scalar;
  using V = Vec2<S>;
  std::vector<typename Surface<K>::VertexClass> classes;
  std::map<std::pair<int, int>, int> corner_class;
  const int n = static_cast<int>(tris.size());
  for (int t = 0; t < n; ++t)
    for (int i = 0; i < 3; ++i) {
      if (corner_class.count({t, i})) continue;
      typename Surface<K>::VertexClass vc;
      const int id = static_cast<int>(classes.size());
      int ct = t, ci = i;
      do {
        corner_class[{ct, ci}] = id;
        vc.corners.emplace_back(ct, ci);
        const int nt = tris[ct].nbr[ci];
        const int ne = tris[ct].nbr_edge[ci];
        ct = nt;
        ci = (ne + 1) % 3;
      } while (!(ct == t && ci == i));
      classes.push_back(std::move(vc));
    }
  for (auto& [key, id] : corner_class) tris[key.first].vcls[key.second] = id;

  const V probe{S(1), S(0)};
  for (auto& vc : classes) {
    int turns = 0;
    for (auto [t, i] : vc.corners) {
      const auto& tr = tris[t];
      const V u = tr.v[(i + 1) % 3] - tr.v[i];
      const V w = tr.v[(i + 2) % 3] - tr.v[i];
      if (in_sector<K>(u, w, probe)) ++turns;
    }
    require(turns >= 1, ErrorCode::InvalidPolygon, "vertex with zero cone angle");
    vc.turns = turns;
  }
  return classes;
}

// Construction back door shared by build_surface / map_surface.
struct SurfaceAccess {
  template <class K>
  static Surface<K> make() { return Surface<K>(); }
  template <class K>
  static auto& polygons(Surface<K>& s) { return s.polygons_; }
  template <class K>
  static auto& gluings(Surface<K>& s) { return s.gluings_; }
  template <class K>
  static auto& tris(Surface<K>& s) { return s.tris_; }
  template <class K>
  static auto& vclasses(Surface<K>& s) { return s.vclasses_; }
  template <class K>
  static auto& area(Surface<K>& s) { return s.area_; }
  template <class K>
  static auto& genus(Surface<K>& s) { return s.genus_; }
  template <class K>
  static auto& field_d(Surface<K>& s) { return s.field_d_; }
};

// Assembles and validates a surface from ccw simple polygons glued edge to
// edge by translations.
template <class K>
Surface<K> build_surface(std::vector<Chain<typename K::Scalar>> polygons,
                         std::vector<Gluing> gluings) {
  using S = typename K::Scalar;
  using V = Vec2<S>;
  Surface<K> surf = SurfaceAccess::make<K>();
  auto& surf_tris = SurfaceAccess::tris(surf);
  auto& surf_vclasses = SurfaceAccess::vclasses(surf);

  require(!polygons.empty(), ErrorCode::InvalidPolygon, "no polygons");
  for (const auto& p : polygons) validate_simple_polygon<K>(p);

  // Gluing must be a fixed-point-free involution pairing every directed edge
  // exactly once, with opposite edge vectors.
  std::map<EdgeRef, EdgeRef> partner;
  for (const auto& [a, b] : gluings) {
    auto check = [&](const EdgeRef& e) {
      require(e.poly >= 0 && e.poly < static_cast<int>(polygons.size()), ErrorCode::UnpairedEdge,
              "gluing references missing polygon");
      require(e.edge >= 0 && e.edge < static_cast<int>(polygons[e.poly].size()),
              ErrorCode::UnpairedEdge, "gluing references missing edge");
    };
    check(a);
    check(b);
    require(!(a == b), ErrorCode::EdgeVectorMismatch, "edge glued to itself");
    require(partner.find(a) == partner.end() && partner.find(b) == partner.end(),
            ErrorCode::UnpairedEdge, "edge glued twice");
    partner[a] = b;
    partner[b] = a;
  }
  auto edge_vec_of = [&](const EdgeRef& e) {
    const auto& ch = polygons[e.poly];
    return ch[(e.edge + 1) % ch.size()] - ch[e.edge];
  };
  for (std::size_t p = 0; p < polygons.size(); ++p)
    for (std::size_t e = 0; e < polygons[p].size(); ++e) {
      EdgeRef er{static_cast<int>(p), static_cast<int>(e)};
      auto it = partner.find(er);
      require(it != partner.end(), ErrorCode::UnpairedEdge,
              "edge " + std::to_string(p) + "/" + std::to_string(e) + " not glued");
      const V w = edge_vec_of(er), wp = edge_vec_of(it->second);
      require(w + wp == V{}, ErrorCode::EdgeVectorMismatch,
              "paired edges are not opposite translates");
    }

  // Triangulate each polygon; keep a map from polygon boundary edges to the
  // unique mesh edge realizing them.
  std::map<EdgeRef, std::pair<int, int>> boundary_edge;
  for (std::size_t p = 0; p < polygons.size(); ++p) {
    const auto& ch = polygons[p];
    const int n = static_cast<int>(ch.size());
    auto tri_idx = triangulate_polygon<K>(ch);
    std::map<std::pair<int, int>, std::pair<int, int>> diag;  // (chain a, chain b) -> mesh edge
    for (const auto& t : tri_idx) {
      typename Surface<K>::Tri tr;
      const int base = surf.num_tris();
      tr.src_poly = static_cast<int>(p);
      for (int i = 0; i < 3; ++i) tr.v[i] = ch[t[i]];
      surf_tris.push_back(tr);
      for (int i = 0; i < 3; ++i) {
        const int a = t[i], b = t[(i + 1) % 3];
        if ((a + 1) % n == b) {
          boundary_edge[EdgeRef{static_cast<int>(p), a}] = {base, i};
        } else {
          auto rev = diag.find({b, a});
          if (rev == diag.end()) {
            diag[{a, b}] = {base, i};
          } else {
            auto [t2, i2] = rev->second;
            surf_tris[base].nbr[i] = t2;
            surf_tris[base].nbr_edge[i] = i2;
            surf_tris[t2].nbr[i2] = base;
            surf_tris[t2].nbr_edge[i2] = i;
          }
        }
      }
    }
  }
  for (const auto& [er, me] : boundary_edge) {
    const auto& per = partner.at(er);
    const auto& pme = boundary_edge.at(per);
    surf_tris[me.first].nbr[me.second] = pme.first;
    surf_tris[me.first].nbr_edge[me.second] = pme.second;
  }

  // Vertex classes: corner fans plus exact cone angles.
  surf_vclasses = compute_vertex_classes<K>(surf_tris);

  int excess = 0;  // sum of (turns - 1) = 2g - 2
  for (const auto& vc : surf_vclasses) excess += vc.turns - 1;
  require(excess % 2 == 0, ErrorCode::InvalidPolygon, "odd angle excess (gluing inconsistent)");
  SurfaceAccess::genus(surf) = 1 + excess / 2;

  S twice{};
  for (const auto& p : polygons) twice += twice_area<K>(p);
  SurfaceAccess::area(surf) = twice / S(2);
  require(K::sign(surf.area()) > 0, ErrorCode::NonPositiveArea, "surface area not positive");

  auto& fd = SurfaceAccess::field_d(surf);
  fd = 0;
  for (const auto& p : polygons)
    for (const auto& v : p) {
      for (std::int64_t d : {detail::field_of(v.x), detail::field_of(v.y)}) {
        if (d == 0) continue;
        require(fd == 0 || fd == d, ErrorCode::MixedField,
                "polygons mix different quadratic fields");
        fd = d;
      }
    }

  SurfaceAccess::polygons(surf) = std::move(polygons);
  SurfaceAccess::gluings(surf) = std::move(gluings);
  return surf;
}

// Applies a coordinate map to every chart, copying the combinatorial data
// verbatim (no re-triangulation, so float kernels inherit the exact mesh).
template <class K2, class F, class K1>
Surface<K2> map_surface(const Surface<K1>& src, F&& f) {
  Surface<K2> out = SurfaceAccess::make<K2>();
  SurfaceAccess::genus(out) = src.genus();
  SurfaceAccess::field_d(out) = 0;
  for (const auto& p : src.polygons()) {
    Chain<typename K2::Scalar> q;
    for (const auto& v : p) q.push_back(f(v));
    SurfaceAccess::polygons(out).push_back(std::move(q));
  }
  SurfaceAccess::gluings(out) = src.gluings();
  for (const auto& t : src.tris()) {
    typename Surface<K2>::Tri tr;
    tr.nbr = t.nbr;
    tr.nbr_edge = t.nbr_edge;
    tr.vcls = t.vcls;
    tr.src_poly = t.src_poly;
    for (int i = 0; i < 3; ++i) tr.v[i] = f(t.v[i]);
    SurfaceAccess::tris(out).push_back(tr);
  }
  for (const auto& vc : src.vertex_classes()) {
    typename Surface<K2>::VertexClass nvc;
    nvc.turns = vc.turns;
    nvc.corners = vc.corners;
    SurfaceAccess::vclasses(out).push_back(std::move(nvc));
  }
  typename K2::Scalar twice{};
  for (const auto& p : out.polygons()) twice += twice_area<K2>(p);
  SurfaceAccess::area(out) = twice / typename K2::Scalar(2);
  require(K2::sign(out.area()) > 0, ErrorCode::NonPositiveArea, "mapped surface area not positive");
  return out;
}

template <class K2, class K1>
Surface<K2> convert_surface(const Surface<K1>& src);

template <>
inline Surface<DoubleKernel> convert_surface<DoubleKernel, ExactKernel>(
    const Surface<ExactKernel>& src) {
  return map_surface<DoubleKernel>(
      src, [](const Vec2<QuadScalar>& v) { return Vec2<double>{v.x.to_double(), v.y.to_double()}; });
}

template <>
inline Surface<BigKernel> convert_surface<BigKernel, ExactKernel>(const Surface<ExactKernel>& src) {
  return map_surface<BigKernel>(src, [](const Vec2<QuadScalar>& v) {
    return Vec2<BigFloat>{scalar_cast<BigKernel>(v.x), scalar_cast<BigKernel>(v.y)};
  });
}

// ---- canonical constructions ----

inline Surface<ExactKernel> square_torus() {
  using V = Vec2<QuadScalar>;
  Chain<QuadScalar> sq{V{0, 0}, V{1, 0}, V{1, 1}, V{0, 1}};
  std::vector<Gluing> g{{EdgeRef{0, 0}, EdgeRef{0, 2}}, {EdgeRef{0, 1}, EdgeRef{0, 3}}};
  return build_surface<ExactKernel>({sq}, g);
}

// Torus C/(Z v1 + Z v2), given as the parallelogram spanned by v1, v2.
template <class K>
Surface<K> parallelogram_torus(const Vec2<typename K::Scalar>& v1,
                               const Vec2<typename K::Scalar>& v2) {
  using V = Vec2<typename K::Scalar>;
  require(K::sign(cross(v1, v2)) > 0, ErrorCode::NonPositiveArea, "need cross(v1,v2) > 0");
  Chain<typename K::Scalar> p{V{}, v1, v1 + v2, v2};
  std::vector<Gluing> g{{EdgeRef{0, 0}, EdgeRef{0, 2}}, {EdgeRef{0, 1}, EdgeRef{0, 3}}};
  return build_surface<K>({p}, g);
}

// Two unit tori cut along the horizontal segment from (0,0) to (lambda,0)
// and reglued crosswise: genus 2, two cone points of angle 4*pi, area 2.
inline Surface<ExactKernel> slit_double_cover(const QuadScalar& lambda) {
  using V = Vec2<QuadScalar>;
  require(lambda.sign() > 0 && (QuadScalar(1) - lambda).sign() > 0, ErrorCode::LambdaOutOfRange,
          "slit length must lie strictly between 0 and 1");
  const QuadScalar one(1), zero(0);
  Chain<QuadScalar> sheet{V{zero, zero}, V{lambda, zero}, V{one, zero},
                          V{one, one},   V{lambda, one}, V{zero, one}};
  // edges: 0 bottom-left(slit), 1 bottom-right, 2 right, 3 top-right, 4 top-left(slit), 5 left
  std::vector<Gluing> g;
  for (int s : {0, 1}) {
    const int o = s, other = 1 - s;
    g.push_back({EdgeRef{o, 0}, EdgeRef{other, 4}});  // slit: bottom_s <-> top_other
    g.push_back({EdgeRef{o, 1}, EdgeRef{o, 3}});      // rest of the horizontal gluing
    g.push_back({EdgeRef{o, 2}, EdgeRef{o, 5}});      // vertical gluing
  }
  return build_surface<ExactKernel>({sheet, sheet}, g);
}

// Exact linear deformation (det > 0); gluings remain translations.
template <class K>
Surface<K> linear_transform(const Surface<K>& s, const typename K::Scalar& a,
                            const typename K::Scalar& b, const typename K::Scalar& c,
                            const typename K::Scalar& d) {
  require(K::sign(a * d - b * c) > 0, ErrorCode::PreconditionViolated,
          "linear map must preserve orientation");
  using V = Vec2<typename K::Scalar>;
  return map_surface<K>(s, [&](const V& v) { return V{a * v.x + b * v.y, c * v.x + d * v.y}; });
}

// Rotates so that `dir` becomes vertical.  The rotation coefficients live in
// the target kernel (float), so exactness is kept only for axis-parallel
// directions handled by linear_transform instead.
template <class K2 = DoubleKernel>
Surface<K2> rotate_to_vertical(const Surface<ExactKernel>& s, const Vec2<QuadScalar>& dir) {
  require(!(dir.x.is_zero() && dir.y.is_zero()), ErrorCode::ZeroDirection, "zero direction");
  using S2 = typename K2::Scalar;
  using std::sqrt;
  const S2 x = scalar_cast<K2>(dir.x), y = scalar_cast<K2>(dir.y);
  const S2 n = sqrt(x * x + y * y);
  const S2 c = y / n, sn = x / n;
  return map_surface<K2>(s, [&](const Vec2<QuadScalar>& v) {
    const S2 vx = scalar_cast<K2>(v.x), vy = scalar_cast<K2>(v.y);
    return Vec2<S2>{c * vx - sn * vy, sn * vx + c * vy};
  });
}

}  // namespace flatnet
