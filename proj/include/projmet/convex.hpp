#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <variant>

#include "projmet/projective.hpp"

namespace projmet {

/// Closed halfspace normal . x <= offset.
template <class F>
struct Halfspace {
  Vec<F> normal;
  F offset;
};

enum class Region { Interior, Boundary, Exterior };

namespace detail {

template <class F>
int orientation2(const Vec<F>& a, const Vec<F>& b, const Vec<F>& c, double scale) {
  F cr = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  if (is_zero(cr, scale * scale)) return 0;
  return cr > F(0) ? 1 : -1;
}

template <class F>
double points_scale(const std::vector<Vec<F>>& pts) {
  double s = 1.0;
  for (const auto& p : pts) s = std::max(s, max_abs(p));
  return s;
}

// Counterclockwise convex hull by monotone chain with strict turns, so
// collinear mid-edge points are dropped.
template <class F>
std::vector<Vec<F>> hull2(std::vector<Vec<F>> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec<F>& a, const Vec<F>& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const double scale = points_scale(pts);
  if (pts.size() < 3) return {};
  std::vector<Vec<F>> h;
  for (int pass = 0; pass < 2; ++pass) {
    std::size_t base = h.size();
    for (const auto& p : pts) {
      while (h.size() >= base + 2 &&
             orientation2(h[h.size() - 2], h[h.size() - 1], p, scale) <= 0)
        h.pop_back();
      h.push_back(p);
    }
    h.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  return h.size() >= 3 ? h : std::vector<Vec<F>>{};
}

}  // namespace detail

/// Bounded convex polytope with dual storage: vertices in convex position
/// (counterclockwise in 2D) and an irredundant halfspace description.
template <class F>
class Polytope {
 public:
  static Polytope from_vertices(std::vector<Vec<F>> pts) {
    if (pts.empty()) fail(ErrorCode::EmptyInterior, "no vertices given");
    const int dim = static_cast<int>(pts[0].size());
    if (dim != 2 && dim != 3)
      fail(ErrorCode::DimensionMismatch, "polytopes are supported in dimensions 2 and 3");
    for (const auto& p : pts)
      if (static_cast<int>(p.size()) != dim)
        fail(ErrorCode::DimensionMismatch, "mixed vertex dimensions");
    Polytope body;
    body.dim_ = dim;
    if (dim == 2)
      body.build_2d(std::move(pts));
    else
      body.build_3d(std::move(pts));
    body.finish();
    return body;
  }

  static Polytope from_halfspaces(int dim, std::vector<Halfspace<F>> hs) {
    if (dim != 2 && dim != 3)
      fail(ErrorCode::DimensionMismatch, "polytopes are supported in dimensions 2 and 3");
    for (auto& h : hs) {
      if (static_cast<int>(h.normal.size()) != dim)
        fail(ErrorCode::DimensionMismatch, "halfspace dimension mismatch");
      if (vec_is_zero(h.normal, max_abs(h.normal)))
        fail(ErrorCode::DegenerateInput, "zero halfspace normal");
    }
    if (!halfspaces_bounded(dim, hs))
      fail(ErrorCode::UnboundedBody, "halfspace intersection is unbounded");
    std::vector<Vec<F>> verts = enumerate_vertices(dim, hs);
    if (verts.empty()) fail(ErrorCode::EmptyInterior, "halfspace intersection is empty");
    return from_vertices(std::move(verts));
  }

  int dim() const { return dim_; }
  const std::vector<Vec<F>>& vertices() const { return verts_; }
  const std::vector<Halfspace<F>>& halfspaces() const { return hs_; }
  /// Vertex indices incident to each halfspace (same order as halfspaces()).
  const std::vector<std::vector<int>>& face_vertices() const { return face_verts_; }

  /// Edges as vertex index pairs. In 2D these are consecutive hull vertices.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    if (dim_ == 2) {
      const int n = static_cast<int>(verts_.size());
      for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
      return e;
    }
    // 3D: an edge is the two vertices shared by a pair of adjacent faces.
    for (std::size_t a = 0; a < face_verts_.size(); ++a) {
      for (std::size_t b = a + 1; b < face_verts_.size(); ++b) {
        std::vector<int> shared;
        for (int v : face_verts_[a])
          if (std::find(face_verts_[b].begin(), face_verts_[b].end(), v) !=
              face_verts_[b].end())
            shared.push_back(v);
        if (shared.size() == 2) {
          auto edge = std::minmax(shared[0], shared[1]);
          if (std::find(e.begin(), e.end(), std::make_pair(edge.first, edge.second)) ==
              e.end())
            e.emplace_back(edge.first, edge.second);
        }
      }
    }
    return e;
  }

  const Vec<F>& centroid() const { return centroid_; }

  /// Largest signed constraint value normal.x - offset over all faces;
  /// negative strictly inside, zero on the boundary.
  F max_violation(const Vec<F>& x) const {
    F worst = dot(hs_[0].normal, x) - hs_[0].offset;
    for (std::size_t i = 1; i < hs_.size(); ++i) {
      F v = dot(hs_[i].normal, x) - hs_[i].offset;
      if (v > worst) worst = v;
    }
    return worst;
  }

  /// Euclidean signed distance to the boundary (negative inside).
  double signed_distance(const Vec<F>& x) const {
    double worst = -1e300;
    for (std::size_t i = 0; i < hs_.size(); ++i) {
      double v = num_traits<F>::to_double(dot(hs_[i].normal, x) - hs_[i].offset);
      worst = std::max(worst, v / normal_norms_[i]);
    }
    return worst;
  }

 private:
  Polytope() = default;

  void build_2d(std::vector<Vec<F>> pts) {
    verts_ = detail::hull2<F>(std::move(pts));
    if (verts_.empty())
      fail(ErrorCode::EmptyInterior, "vertices do not span a 2D polygon");
    const int n = static_cast<int>(verts_.size());
    for (int i = 0; i < n; ++i) {
      const Vec<F>& a = verts_[i];
      const Vec<F>& b = verts_[(i + 1) % n];
      // Outward normal of a counterclockwise edge.
      Vec<F> normal{b[1] - a[1], a[0] - b[0]};
      hs_.push_back({normal, dot(normal, a)});
      face_verts_.push_back({i, (i + 1) % n});
    }
  }

  void build_3d(std::vector<Vec<F>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const double scale = detail::points_scale(pts);
    const std::size_t m = pts.size();
    // Brute-force facet enumeration: a plane through three points is a face
    // when every point lies weakly on one side. Adequate at the polytope
    // sizes handled here.
    std::vector<Halfspace<F>> faces;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
          Vec<F> n = cross3(vec_sub(pts[j], pts[i]), vec_sub(pts[k], pts[i]));
          if (vec_is_zero(n, scale * scale)) continue;
          F c = dot(n, pts[i]);
          bool above = false, below = false;
          for (const auto& p : pts) {
            F v = dot(n, p) - c;
            if (is_zero(v, scale * scale * scale)) continue;
            (v > F(0) ? above : below) = true;
            if (above && below) break;
          }
          if (above && below) continue;
          if (!above && !below) continue;  // all points coplanar with this face
          Halfspace<F> h;
          h.normal = above ? vec_scale(F(-1), n) : n;
          h.offset = above ? -c : c;
          bool dup = false;
          for (const auto& g : faces)
            if (same_halfspace(g, h, scale)) {
              dup = true;
              break;
            }
          if (!dup) faces.push_back(h);
        }
      }
    }
    if (faces.empty())
      fail(ErrorCode::EmptyInterior, "vertices do not span a 3D polytope");
    // Degenerate input (all points coplanar) yields complementary halfspace
    // pairs and no interior; caught by the centroid check in finish().
    hs_ = std::move(faces);
    const double s3 = scale * scale * scale;
    std::vector<std::vector<int>> incident(pts.size());
    face_verts_.assign(hs_.size(), {});
    for (std::size_t f = 0; f < hs_.size(); ++f) {
      for (std::size_t v = 0; v < pts.size(); ++v) {
        if (is_zero(dot(hs_[f].normal, pts[v]) - hs_[f].offset, s3)) {
          face_verts_[f].push_back(static_cast<int>(v));
          incident[v].push_back(static_cast<int>(f));
        }
      }
    }
    // A vertex is extreme iff its incident face normals span 3 dimensions.
    std::vector<int> keep_index(pts.size(), -1);
    for (std::size_t v = 0; v < pts.size(); ++v) {
      if (normals_rank3(incident[v], scale)) {
        keep_index[v] = static_cast<int>(verts_.size());
        verts_.push_back(pts[v]);
      }
    }
    if (verts_.size() < 4)
      fail(ErrorCode::EmptyInterior, "vertices do not span a 3D polytope");
    for (auto& fv : face_verts_) {
      std::vector<int> remapped;
      for (int v : fv)
        if (keep_index[v] >= 0) remapped.push_back(keep_index[v]);
      fv = std::move(remapped);
    }
  }

  bool normals_rank3(const std::vector<int>& faces, double scale) const {
    for (std::size_t a = 0; a < faces.size(); ++a)
      for (std::size_t b = a + 1; b < faces.size(); ++b)
        for (std::size_t c = b + 1; c < faces.size(); ++c) {
          Mat<F> m{hs_[faces[a]].normal, hs_[faces[b]].normal, hs_[faces[c]].normal};
          if (!is_zero(det3(m), scale * scale * scale)) return true;
        }
    return false;
  }

  static bool same_halfspace(const Halfspace<F>& a, const Halfspace<F>& b,
                             double scale) {
    // Proportional with a positive factor.
    const std::size_t n = a.normal.size();
    double s2 = scale * scale;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j)
        if (!is_zero(a.normal[i] * b.normal[j] - a.normal[j] * b.normal[i], s2))
          return false;
      if (!is_zero(a.normal[i] * b.offset - b.normal[i] * a.offset, s2)) return false;
    }
    F d = dot(a.normal, b.normal);
    return d > F(0);
  }

  static bool halfspaces_bounded(int dim, const std::vector<Halfspace<F>>& hs) {
    const double scale = [&] {
      double s = 1.0;
      for (const auto& h : hs) s = std::max(s, max_abs(h.normal));
      return s;
    }();
    // Unbounded iff the recession cone {d : N d <= 0} is nontrivial. Any
    // nonzero cone contains an extreme ray (cut out by dim-1 independent
    // active normals) or a full line (normals rank-deficient).
    std::vector<Vec<F>> candidates;
    if (dim == 2) {
      bool full_rank = false;
      for (std::size_t i = 0; i < hs.size() && !full_rank; ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j)
          if (!is_zero(det2(hs[i].normal[0], hs[i].normal[1], hs[j].normal[0],
                            hs[j].normal[1]),
                       scale * scale)) {
            full_rank = true;
            break;
          }
      if (!full_rank) return false;
      for (const auto& h : hs) {
        candidates.push_back(Vec<F>{-h.normal[1], h.normal[0]});
        candidates.push_back(Vec<F>{h.normal[1], -h.normal[0]});
      }
    } else {
      bool full_rank = false;
      for (std::size_t i = 0; i < hs.size() && !full_rank; ++i)
        for (std::size_t j = i + 1; j < hs.size() && !full_rank; ++j)
          for (std::size_t k = j + 1; k < hs.size(); ++k) {
            Mat<F> m{hs[i].normal, hs[j].normal, hs[k].normal};
            if (!is_zero(det3(m), scale * scale * scale)) {
              full_rank = true;
              break;
            }
          }
      if (!full_rank) return false;
      for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
          Vec<F> d = cross3(hs[i].normal, hs[j].normal);
          if (vec_is_zero(d, scale * scale)) continue;
          candidates.push_back(d);
          candidates.push_back(vec_scale(F(-1), d));
        }
    }
    for (const auto& d : candidates) {
      bool recession = true;
      double dscale = max_abs(d) * scale;
      for (const auto& h : hs) {
        F v = dot(h.normal, d);
        if (v > F(0) && !is_zero(v, dscale)) {
          recession = false;
          break;
        }
      }
      if (recession) return false;
    }
    return true;
  }

  static std::vector<Vec<F>> enumerate_vertices(int dim,
                                                const std::vector<Halfspace<F>>& hs) {
    const double scale = [&] {
      double s = 1.0;
      for (const auto& h : hs)
        s = std::max({s, max_abs(h.normal), magnitude(h.offset)});
      return s;
    }();
    std::vector<Vec<F>> verts;
    auto try_system = [&](const std::vector<std::size_t>& idx) {
      Mat<F> m;
      Vec<F> rhs;
      for (std::size_t i : idx) {
        m.push_back(hs[i].normal);
        rhs.push_back(hs[i].offset);
      }
      Vec<F> x;
      try {
        x = solve_linear(m, rhs);
      } catch (const Error&) {
        return;
      }
      double xscale = std::max(scale, max_abs(x) * scale);
      for (const auto& h : hs) {
        F v = dot(h.normal, x) - h.offset;
        if (v > F(0) && !is_zero(v, xscale)) return;
      }
      for (const auto& w : verts)
        if (vec_is_zero(vec_sub(w, x), std::max(1.0, max_abs(x)))) return;
      verts.push_back(std::move(x));
    };
    const std::size_t m = hs.size();
    if (dim == 2) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) try_system({i, j});
    } else {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
          for (std::size_t k = j + 1; k < m; ++k) try_system({i, j, k});
    }
    return verts;
  }

  void finish() {
    centroid_ = Vec<F>(dim_, F(0));
    for (const auto& v : verts_) centroid_ = vec_add(centroid_, v);
    F inv(1);
    inv /= F(static_cast<int>(verts_.size()));
    centroid_ = vec_scale(inv, centroid_);
    // Full-dimensionality: the vertex centroid must be strictly interior.
    for (const auto& h : hs_) {
      F v = dot(h.normal, centroid_) - h.offset;
      bool strictly_inside;
      if constexpr (num_traits<F>::is_exact) {
        strictly_inside = v < F(0);
      } else {
        strictly_inside = v < F(0) && !is_zero(v, max_abs(h.normal) * max_abs(centroid_));
      }
      if (!strictly_inside)
        fail(ErrorCode::EmptyInterior, "polytope has no interior point");
    }
    normal_norms_.clear();
    for (const auto& h : hs_) {
      double n2 = 0.0;
      for (const auto& c : h.normal) {
        double cd = num_traits<F>::to_double(c);
        n2 += cd * cd;
      }
      normal_norms_.push_back(std::sqrt(n2));
    }
  }

  int dim_ = 0;
  std::vector<Vec<F>> verts_;
  std::vector<Halfspace<F>> hs_;
  std::vector<std::vector<int>> face_verts_;
  std::vector<double> normal_norms_;
  Vec<F> centroid_;
};

/// Solid ellipsoid (x-c)^T S (x-c) <= 1 with S positive definite.
class Ellipsoid {
 public:
  Ellipsoid(Vec<double> center, Mat<double> shape)
      : center_(std::move(center)), shape_(std::move(shape)) {
    const std::size_t n = center_.size();
    if (shape_.size() != n)
      fail(ErrorCode::DimensionMismatch, "shape matrix size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (shape_[i].size() != n)
        fail(ErrorCode::DimensionMismatch, "shape matrix not square");
      for (std::size_t j = 0; j < n; ++j)
        if (std::fabs(shape_[i][j] - shape_[j][i]) >
            1e-12 * std::max(1.0, max_abs(shape_[i])))
          fail(ErrorCode::DegenerateInput, "shape matrix not symmetric");
    }
    auto eig = symmetric_eigenvalues(shape_);
    if (eig.front() <= 0.0)
      fail(ErrorCode::DegenerateInput, "shape matrix not positive definite");
    min_eig_ = eig.front();
    max_eig_ = eig.back();
  }

  static Ellipsoid ball(Vec<double> center, double radius) {
    const std::size_t n = center.size();
    Mat<double> s = identity_matrix<double>(n);
    for (std::size_t i = 0; i < n; ++i) s[i][i] = 1.0 / (radius * radius);
    return Ellipsoid(std::move(center), std::move(s));
  }

  int dim() const { return static_cast<int>(center_.size()); }
  const Vec<double>& center() const { return center_; }
  const Mat<double>& shape() const { return shape_; }

  /// Minkowski gauge: <1 inside, 1 on the boundary.
  double gauge(const Vec<double>& x) const {
    Vec<double> d = vec_sub(x, center_);
    return std::sqrt(std::max(0.0, dot(d, mat_vec(shape_, d))));
  }

  double min_semiaxis() const { return 1.0 / std::sqrt(max_eig_); }
  double max_semiaxis() const { return 1.0 / std::sqrt(min_eig_); }

 private:
  Vec<double> center_;
  Mat<double> shape_;
  double min_eig_ = 0.0, max_eig_ = 0.0;
};

/// Convex body given only by a membership test plus a bounding box. The
/// membership function must be pure and reentrant.
class OracleBody {
 public:
  OracleBody(int dim, std::function<bool(const Vec<double>&)> member,
             Vec<double> box_lo, Vec<double> box_hi)
      : dim_(dim), member_(std::move(member)), lo_(std::move(box_lo)),
        hi_(std::move(box_hi)) {
    if (static_cast<int>(lo_.size()) != dim_ || static_cast<int>(hi_.size()) != dim_)
      fail(ErrorCode::DimensionMismatch, "bounding box dimension mismatch");
    for (int i = 0; i < dim_; ++i)
      if (!(lo_[i] < hi_[i]))
        fail(ErrorCode::UnboundedBody, "bounding box must have positive extent");
  }

  int dim() const { return dim_; }
  bool member(const Vec<double>& x) const { return member_(x); }
  const Vec<double>& box_lo() const { return lo_; }
  const Vec<double>& box_hi() const { return hi_; }

 private:
  int dim_;
  std::function<bool(const Vec<double>&)> member_;
  Vec<double> lo_, hi_;
};

namespace detail {
template <class F>
struct body_variant {
  using type = std::variant<Polytope<F>>;
};
template <>
struct body_variant<double> {
  using type = std::variant<Polytope<double>, Ellipsoid, OracleBody>;
};
}  // namespace detail

/// Bounded convex body with nonempty interior. Rational-mode bodies are
/// polytopes; float-mode bodies may also be ellipsoids or membership
/// oracles.
template <class F>
class ConvexBody {
 public:
  using Rep = typename detail::body_variant<F>::type;

  explicit ConvexBody(Polytope<F> p) : rep_(std::move(p)) {}

  template <class T = F, class = std::enable_if_t<std::is_same_v<T, double>>>
  explicit ConvexBody(Ellipsoid e) : rep_(std::move(e)) {}

  template <class T = F, class = std::enable_if_t<std::is_same_v<T, double>>>
  explicit ConvexBody(OracleBody o) : rep_(std::move(o)) {}

  const Rep& rep() const { return rep_; }

  bool is_polytope() const { return std::holds_alternative<Polytope<F>>(rep_); }
  const Polytope<F>& polytope() const {
    if (!is_polytope())
      fail(ErrorCode::UnsupportedPair, "operation requires a polytope body");
    return std::get<Polytope<F>>(rep_);
  }

  int dim() const {
    return std::visit([](const auto& r) { return r.dim(); }, rep_);
  }

  std::pair<Vec<double>, Vec<double>> bounding_box() const {
    return std::visit(
        [&](const auto& r) -> std::pair<Vec<double>, Vec<double>> {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, Polytope<F>>) {
            Vec<double> lo(r.dim(), 1e300), hi(r.dim(), -1e300);
            for (const auto& v : r.vertices())
              for (int i = 0; i < r.dim(); ++i) {
                double c = num_traits<F>::to_double(v[i]);
                lo[i] = std::min(lo[i], c);
                hi[i] = std::max(hi[i], c);
              }
            return {lo, hi};
          } else if constexpr (std::is_same_v<T, Ellipsoid>) {
            Vec<double> lo(r.dim()), hi(r.dim());
            double rad = r.max_semiaxis();
            for (int i = 0; i < r.dim(); ++i) {
              lo[i] = r.center()[i] - rad;
              hi[i] = r.center()[i] + rad;
            }
            return {lo, hi};
          } else {
            return {r.box_lo(), r.box_hi()};
          }
        },
        rep_);
  }

  double diameter() const {
    auto [lo, hi] = bounding_box();
    double d2 = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i)
      d2 += (hi[i] - lo[i]) * (hi[i] - lo[i]);
    return std::sqrt(d2);
  }

  /// A strictly interior point.
  Vec<F> interior_point() const {
    return std::visit(
        [&](const auto& r) -> Vec<F> {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, Polytope<F>>) {
            return r.centroid();
          } else if constexpr (std::is_same_v<T, Ellipsoid>) {
            return r.center();
          } else {
            Vec<double> c(r.dim());
            for (int i = 0; i < r.dim(); ++i) c[i] = 0.5 * (r.box_lo()[i] + r.box_hi()[i]);
            if (!r.member(c))
              fail(ErrorCode::EmptyInterior,
                   "oracle body does not contain its box center");
            return c;
          }
        },
        rep_);
  }

 private:
  Rep rep_;
};

/// Classifies a point against the body. Boundary means Euclidean distance to
/// the boundary at most eps (measured in the gauge for ellipsoids, by axis
/// probes for oracles); rational-mode polytopes are classified exactly and
/// ignore eps.
template <class F>
Region classify(const ConvexBody<F>& body, const Vec<F>& p, double eps = 1e-9) {
  if (static_cast<int>(p.size()) != body.dim())
    fail(ErrorCode::DimensionMismatch, "point dimension mismatch");
  return std::visit(
      [&](const auto& r) -> Region {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Polytope<F>>) {
          if constexpr (num_traits<F>::is_exact) {
            F worst = r.max_violation(p);
            if (worst < F(0)) return Region::Interior;
            if (worst == F(0)) return Region::Boundary;
            return Region::Exterior;
          } else {
            double d = r.signed_distance(p);
            if (std::fabs(d) <= eps) return Region::Boundary;
            return d < 0 ? Region::Interior : Region::Exterior;
          }
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          double g = r.gauge(p);
          // Gauge deviation scaled by the smallest semiaxis bounds the
          // Euclidean distance to the boundary from below.
          double d = (g - 1.0) * r.min_semiaxis();
          if (std::fabs(d) <= eps) return Region::Boundary;
          return d < 0 ? Region::Interior : Region::Exterior;
        } else {
          bool inside = r.member(p);
          Vec<double> probe = p;
          for (int i = 0; i < r.dim(); ++i) {
            for (double s : {-1.0, 1.0}) {
              probe[i] = p[i] + s * eps;
              bool pm = r.member(probe);
              if (pm != inside) return Region::Boundary;
            }
            probe[i] = p[i];
          }
          return inside ? Region::Interior : Region::Exterior;
        }
      },
      body.rep());
}

/// Line-body intersection ordered X, A, B, Y along the carrier. Parameters
/// are taken on the chord line p(t) = A + t (B - A), so A is t=0 and B is
/// t=1; X and Y are the boundary points with t_x < 0 and t_y > 1.
template <class F>
struct Chord {
  Vec<F> x, a, b, y;
  Vec<F> origin, dir;  // carrier parametrization origin + t * dir
  F t_x, t_y;
};

namespace detail {

// Clip interval [lo, hi] of the line origin + t*dir by n.(p) <= c.
template <class F>
void clip_halfspace(const Halfspace<F>& h, const Vec<F>& origin, const Vec<F>& dir,
                    F& lo, F& hi, bool& empty) {
  F denom = dot(h.normal, dir);
  F num = h.offset - dot(h.normal, origin);
  double scale = max_abs(h.normal) * std::max(max_abs(dir), 1.0);
  if (is_zero(denom, scale)) {
    if (num < F(0)) empty = true;  // line misses the halfspace entirely
    return;
  }
  F t = num / denom;
  if (denom > F(0)) {
    if (t < hi) hi = t;
  } else {
    if (t > lo) lo = t;
  }
  if (!(lo < hi)) empty = true;
}

}  // namespace detail

template <class F>
Chord<F> chord(const ConvexBody<F>& body, const Vec<F>& a, const Vec<F>& b,
               double eps = 1e-9) {
  if (vec_is_zero(vec_sub(a, b), std::max(max_abs(a), max_abs(b))))
    fail(ErrorCode::CoincidentPoints, "chord endpoints coincide");
  if (classify(body, a, eps) != Region::Interior ||
      classify(body, b, eps) != Region::Interior)
    fail(ErrorCode::PointsNotInterior, "chord points must be strictly interior");

  Vec<F> dir = vec_sub(b, a);
  F t_lo, t_hi;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Polytope<F>>) {
          F lo(-1), hi(2);
          // Start from a bracket sure to contain [t_x, t_y].
          double reach = body.diameter() / std::max(max_abs(dir), 1e-300) + 2.0;
          lo = F(num_traits<F>::from_double(-reach));
          hi = F(num_traits<F>::from_double(reach));
          bool empty = false;
          for (const auto& h : r.halfspaces())
            detail::clip_halfspace(h, a, dir, lo, hi, empty);
          if (empty) fail(ErrorCode::PointsNotInterior, "chord clip came up empty");
          t_lo = lo;
          t_hi = hi;
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          Vec<double> p = vec_sub(a, r.center());
          Vec<double> sd = mat_vec(r.shape(), dir);
          double qa = dot(dir, sd);
          double qb = 2.0 * dot(p, sd);
          double qc = dot(p, mat_vec(r.shape(), p)) - 1.0;
          double disc = qb * qb - 4.0 * qa * qc;
          if (disc <= 0.0)
            fail(ErrorCode::PointsNotInterior, "line does not cross the ellipsoid");
          double root = std::sqrt(disc);
          double q = -(qb + (qb >= 0 ? root : -root)) / 2.0;
          double r1 = q / qa, r2 = qc / q;
          t_lo = std::min(r1, r2);
          t_hi = std::max(r1, r2);
        } else {
          // Bracketed bisection against the membership oracle.
          const double tol_t =
              tol::kOracleChord * body.diameter() / std::max(max_abs(dir), 1e-300);
          auto inside = [&](double t) { return r.member(vec_axpy(a, t, dir)); };
          auto boundary = [&](double t_in, double t_out) {
            while (t_out - t_in > tol_t || t_in - t_out > tol_t) {
              double mid = 0.5 * (t_in + t_out);
              (inside(mid) ? t_in : t_out) = mid;
            }
            return 0.5 * (t_in + t_out);
          };
          double reach = body.diameter() / std::max(max_abs(dir), 1e-300) + 1.0;
          t_hi = boundary(1.0, reach);
          t_lo = boundary(0.0, -reach);
        }
      },
      body.rep());

  Chord<F> c;
  c.a = a;
  c.b = b;
  c.origin = a;
  c.dir = dir;
  c.t_x = t_lo;
  c.t_y = t_hi;
  c.x = vec_axpy(a, t_lo, dir);
  c.y = vec_axpy(a, t_hi, dir);
  if (!(c.t_x < F(0)) || !(c.t_y > F(1)))
    fail(ErrorCode::PointsNotInterior, "chord does not order as X, A, B, Y");
  return c;
}

enum class NestMode { Exact, Sampled };

namespace detail {

inline Mat<double> homogeneous_form(const Ellipsoid& e) {
  const int n = e.dim();
  Mat<double> m(n + 1, Vec<double>(n + 1, 0.0));
  Vec<double> sc = mat_vec(e.shape(), e.center());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = e.shape()[i][j];
    m[i][n] = -sc[i];
    m[n][i] = -sc[i];
  }
  m[n][n] = dot(e.center(), sc) - 1.0;
  return m;
}

// Ellipsoid containment by the S-lemma: inner is contained in outer iff
// some lambda >= 0 makes lambda*M_inner - M_outer positive semidefinite.
// The smallest eigenvalue is concave in lambda, so golden-section search.
inline bool ellipsoid_in_ellipsoid(const Ellipsoid& inner, const Ellipsoid& outer) {
  Mat<double> mi = homogeneous_form(inner);
  Mat<double> mo = homogeneous_form(outer);
  auto min_eig = [&](double lambda) {
    Mat<double> m = mo;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) m[i][j] = lambda * mi[i][j] - mo[i][j];
    return symmetric_eigenvalues(m).front();
  };
  double lo = 0.0, hi = 1.0;
  while (min_eig(hi) < min_eig(hi / 2) && hi < 1e12) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (min_eig(m1) < min_eig(m2))
      lo = m1;
    else
      hi = m2;
  }
  double scale = std::max(max_abs(mi[0]), max_abs(mo[0])) + 1.0;
  return min_eig(0.5 * (lo + hi)) >= -1e-9 * scale;
}

template <class F>
bool sampled_nested(const ConvexBody<F>& inner, const ConvexBody<F>& outer);

}  // namespace detail

/// True iff every point of `inner` lies in `outer`. Exact for polytope and
/// ellipsoid representations; bodies given by oracles only admit the sampled
/// heuristic mode.
template <class F>
bool is_nested(const ConvexBody<F>& inner, const ConvexBody<F>& outer,
               NestMode mode = NestMode::Exact) {
  if (inner.dim() != outer.dim())
    fail(ErrorCode::DimensionMismatch, "nested bodies must share a dimension");
  if constexpr (std::is_same_v<F, double>) {
    const bool inner_oracle = std::holds_alternative<OracleBody>(inner.rep());
    const bool outer_oracle = std::holds_alternative<OracleBody>(outer.rep());
    if (inner_oracle || outer_oracle) {
      if (mode == NestMode::Exact)
        fail(ErrorCode::UnsupportedPair,
             "exact nesting is unavailable for oracle bodies");
      return detail::sampled_nested(inner, outer);
    }
  }

  auto vertices_inside = [&](const std::vector<Vec<F>>& verts) {
    for (const auto& v : verts)
      if (classify(outer, v, 1e-12 * std::max(outer.diameter(), 1.0)) ==
          Region::Exterior)
        return false;
    return true;
  };

  if (inner.is_polytope()) return vertices_inside(inner.polytope().vertices());

  if constexpr (std::is_same_v<F, double>) {
    const auto& e = std::get<Ellipsoid>(inner.rep());
    if (outer.is_polytope()) {
      // Support function of the ellipsoid against each face.
      Mat<double> inv = mat_inverse(e.shape());
      for (const auto& h : outer.polytope().halfspaces()) {
        double support = dot(h.normal, e.center()) +
                         std::sqrt(std::max(0.0, dot(h.normal, mat_vec(inv, h.normal))));
        double scale = max_abs(h.normal) * std::max(1.0, max_abs(e.center()));
        if (support > num_traits<F>::to_double(h.offset) + 1e-9 * scale) return false;
      }
      return true;
    }
    return detail::ellipsoid_in_ellipsoid(e, std::get<Ellipsoid>(outer.rep()));
  }
  fail(ErrorCode::UnsupportedPair, "unsupported body pair for nesting");
}

namespace detail {

template <class F>
bool sampled_nested(const ConvexBody<F>& inner, const ConvexBody<F>& outer) {
  static_assert(std::is_same_v<F, double>);
  const int n = inner.dim();
  Vec<double> c = inner.interior_point();
  const double shrink = 1.0 - 1e-9;
  auto check_direction = [&](const Vec<double>& u) {
    // March to the inner boundary, then test outer membership just inside.
    Chord<double> ch = chord(inner, c, vec_axpy(c, 1e-6 * inner.diameter(), u));
    Vec<double> bp = vec_axpy(c, shrink * num_traits<double>::to_double(ch.t_y),
                              ch.dir);
    return classify(outer, bp, 1e-9 * std::max(1.0, outer.diameter())) !=
           Region::Exterior;
  };
  const int samples = 256;
  if (n == 2) {
    for (int i = 0; i < samples; ++i) {
      double th = 2.0 * M_PI * i / samples;
      if (!check_direction({std::cos(th), std::sin(th)})) return false;
    }
    return true;
  }
  // Fibonacci sphere directions.
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < samples; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / samples;
    double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    double th = golden * i;
    if (!check_direction({rad * std::cos(th), rad * std::sin(th), z})) return false;
  }
  return true;
}

}  // namespace detail

/// Maximal straight segment contained in the body boundary.
template <class F>
struct FlatPiece {
  Vec<F> a, b;
};

/// Two boundary flats cut by a common plane section; the raw material of the
/// triangle-inequality equality cases. `parallel` marks pairs whose carrier
/// lines meet at infinity.
template <class F>
struct FlatPair {
  FlatPiece<F> first, second;
  PlaneChart<F> section;
  bool parallel = false;
};

namespace detail {

template <class F>
bool directions_parallel(const Vec<F>& u, const Vec<F>& v) {
  double scale = max_abs(u) * max_abs(v);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (!is_zero(u[i] * v[j] - u[j] * v[i], scale)) return false;
  return true;
}

template <class F>
bool segments_collinear(const FlatPiece<F>& s1, const FlatPiece<F>& s2) {
  return are_collinear(std::vector<ProjectivePoint<F>>{
      ProjectivePoint<F>::from_affine(s1.a), ProjectivePoint<F>::from_affine(s1.b),
      ProjectivePoint<F>::from_affine(s2.a), ProjectivePoint<F>::from_affine(s2.b)});
}

// Emit all non-collinear pairs of polygon edges, given in chart coordinates.
template <class F>
void emit_edge_pairs(const std::vector<FlatPiece<F>>& edges, const PlaneChart<F>& chart,
                     std::vector<FlatPair<F>>& out) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (segments_collinear(edges[i], edges[j])) continue;
      FlatPair<F> pair{edges[i], edges[j], chart, false};
      pair.parallel = directions_parallel(vec_sub(edges[i].b, edges[i].a),
                                          vec_sub(edges[j].b, edges[j].a));
      out.push_back(std::move(pair));
    }
  }
}

// 2D convex polygon cut out of the section plane chart by the body's
// halfspaces, as chart-coordinate vertices in counterclockwise order.
template <class F>
std::vector<Vec<F>> section_polygon(const Polytope<F>& poly, const PlaneChart<F>& chart,
                                    const Vec<F>& plane_origin, const Vec<F>& e1,
                                    const Vec<F>& e2) {
  std::vector<Halfspace<F>> induced;
  for (const auto& h : poly.halfspaces()) {
    Vec<F> n2{dot(h.normal, e1), dot(h.normal, e2)};
    F c2 = h.offset - dot(h.normal, plane_origin);
    if (vec_is_zero(n2, max_abs(h.normal) * std::max(max_abs(e1), max_abs(e2)))) {
      if (c2 < F(0)) return {};  // plane entirely outside this halfspace
      continue;
    }
    induced.push_back({std::move(n2), std::move(c2)});
  }
  std::vector<Vec<F>> verts;
  const std::size_t m = induced.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      Mat<F> sys{induced[i].normal, induced[j].normal};
      Vec<F> rhs{induced[i].offset, induced[j].offset};
      Vec<F> x;
      try {
        x = solve_linear(sys, rhs);
      } catch (const Error&) {
        continue;
      }
      bool ok = true;
      double xscale = std::max(1.0, max_abs(x));
      for (const auto& h : induced) {
        F v = dot(h.normal, x) - h.offset;
        if (v > F(0) && !is_zero(v, xscale * max_abs(h.normal))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      bool dup = false;
      for (const auto& w : verts)
        if (vec_is_zero(vec_sub(w, x), xscale)) {
          dup = true;
          break;
        }
      if (!dup) verts.push_back(std::move(x));
    }
  }
  if (verts.size() < 3) return {};
  return hull2<F>(std::move(verts));
}

}  // namespace detail

/// Enumerates pairs of boundary flats lying in a common section. For 2D
/// polytopes these are pairs of non-collinear polygon edges in the plane
/// itself. For 3D polytopes, candidate planes are spanned by coplanar edge
/// pairs or placed midway between skew edge pairs, deduplicated, restricted
/// to planes meeting the interior; the section polygon's edge pairs are then
/// emitted with the section chart.
template <class F>
std::vector<FlatPair<F>> degenerate_flats(const ConvexBody<F>& body) {
  const Polytope<F>& poly = body.polytope();
  std::vector<FlatPair<F>> out;

  if (poly.dim() == 2) {
    PlaneChart<F> chart(Vec<F>{F(0), F(0)}, Vec<F>{F(1), F(0)}, Vec<F>{F(0), F(1)});
    std::vector<FlatPiece<F>> edges;
    const auto& v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i)
      edges.push_back({v[i], v[(i + 1) % v.size()]});
    detail::emit_edge_pairs(edges, chart, out);
    return out;
  }

  const auto& verts = poly.vertices();
  const double scale = detail::points_scale(verts);
  auto edge_list = poly.edges();

  // Candidate section planes (normal, offset), deduplicated.
  std::vector<Halfspace<F>> planes;
  auto add_plane = [&](Vec<F> n, F c) {
    if (vec_is_zero(n, scale * scale)) return;
    // Normalize scale and sign for dedup.
    std::size_t lead = 0;
    double bm = 0;
    for (std::size_t i = 0; i < n.size(); ++i)
      if (magnitude(n[i]) > bm) {
        bm = magnitude(n[i]);
        lead = i;
      }
    F inv = F(1) / n[lead];
    n = vec_scale(inv, n);
    c = c * inv;
    for (const auto& p : planes) {
      bool same = is_zero(p.offset - c, std::max(1.0, magnitude(c)), tol::kPlaneDedup);
      for (std::size_t i = 0; i < n.size() && same; ++i)
        same = is_zero(p.normal[i] - n[i], 1.0, tol::kPlaneDedup);
      if (same) return;
    }
    planes.push_back({std::move(n), std::move(c)});
  };

  for (std::size_t a = 0; a < edge_list.size(); ++a) {
    for (std::size_t b = a + 1; b < edge_list.size(); ++b) {
      const Vec<F>&p1 = verts[edge_list[a].first], &q1 = verts[edge_list[a].second];
      const Vec<F>&p2 = verts[edge_list[b].first], &q2 = verts[edge_list[b].second];
      Vec<F> d1 = vec_sub(q1, p1), d2 = vec_sub(q2, p2);
      Vec<F> n = cross3(d1, d2);
      Mat<F> span{d1, d2, vec_sub(p2, p1)};
      bool coplanar = is_zero(det3(span), scale * scale * scale);
      if (coplanar) {
        if (detail::directions_parallel(d1, d2)) {
          Vec<F> join = vec_sub(p2, p1);
          if (detail::directions_parallel(d1, join)) continue;  // collinear edges
          n = cross3(d1, join);
        }
        add_plane(n, dot(n, p1));
      } else {
        // Skew edges: the plane parallel to both, midway between the lines.
        F c = (dot(n, p1) + dot(n, p2)) / F(2);
        add_plane(std::move(n), std::move(c));
      }
    }
  }

  for (const auto& plane : planes) {
    // The plane must meet the interior: vertices strictly on both sides.
    bool above = false, below = false;
    for (const auto& v : verts) {
      F s = dot(plane.normal, v) - plane.offset;
      if (is_zero(s, scale * max_abs(plane.normal))) continue;
      (s > F(0) ? above : below) = true;
    }
    if (!above || !below) continue;

    // Chart of the section plane with a rational-friendly frame.
    const Vec<F>& n = plane.normal;
    Vec<F> axis(3, F(0));
    std::size_t small = 0;
    double sm = 1e300;
    for (std::size_t i = 0; i < 3; ++i)
      if (magnitude(n[i]) < sm) {
        sm = magnitude(n[i]);
        small = i;
      }
    axis[small] = F(1);
    Vec<F> e1 = cross3(n, axis);
    Vec<F> e2 = cross3(n, e1);
    F n2 = dot(n, n);
    Vec<F> origin = vec_scale(plane.offset / n2, n);
    PlaneChart<F> chart(origin, e1, e2);

    auto polygon = detail::section_polygon(poly, chart, origin, e1, e2);
    if (polygon.size() < 3) continue;
    std::vector<FlatPiece<F>> edges;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
      const Vec<F>& u = polygon[i];
      const Vec<F>& w = polygon[(i + 1) % polygon.size()];
      auto lift = [&](const Vec<F>& p) {
        return chart.from_chart_affine(
            ProjectivePoint<F>(Vec<F>{F(1), p[0], p[1]}));
      };
      edges.push_back({lift(u), lift(w)});
    }
    detail::emit_edge_pairs(edges, chart, out);
  }
  return out;
}

}  // namespace projmet
