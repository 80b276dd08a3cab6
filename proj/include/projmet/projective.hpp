#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>

#include "projmet/linalg.hpp"

namespace projmet {

/// Value on a 1-dimensional projective chart: a field element or the point
/// at infinity. Only this chart type carries an explicit infinity marker;
/// everything else works in homogeneous coordinates.
template <class F>
struct ProjectiveScalar {
  F value{};
  bool infinite = false;

  static ProjectiveScalar of(F v) { return {std::move(v), false}; }
  static ProjectiveScalar infinity() { return {F(0), true}; }

  bool is_finite() const { return !infinite; }

  friend bool operator==(const ProjectiveScalar& a, const ProjectiveScalar& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
};

/// Point of projective n-space as a homogeneous coordinate tuple. Index 0 is
/// the weight; (0, d...) is the ideal point with direction d.
template <class F>
class ProjectivePoint {
 public:
  explicit ProjectivePoint(Vec<F> hom) : h_(std::move(hom)) {
    if (h_.size() < 2)
      fail(ErrorCode::DimensionMismatch, "projective point needs >= 2 components");
    if (vec_is_zero(h_, max_abs(h_)))
      fail(ErrorCode::DegenerateInput, "all homogeneous components zero");
    normalize();
  }

  static ProjectivePoint from_affine(const Vec<F>& p) {
    Vec<F> h(p.size() + 1);
    h[0] = F(1);
    for (std::size_t i = 0; i < p.size(); ++i) h[i + 1] = p[i];
    return ProjectivePoint(std::move(h));
  }

  static ProjectivePoint ideal(const Vec<F>& direction) {
    Vec<F> h(direction.size() + 1, F(0));
    for (std::size_t i = 0; i < direction.size(); ++i) h[i + 1] = direction[i];
    return ProjectivePoint(std::move(h));
  }

  /// Chart point on the projective line: x -> (1 : x).
  static ProjectivePoint on_line(const ProjectiveScalar<F>& s) {
    if (s.infinite) return ProjectivePoint(Vec<F>{F(0), F(1)});
    return ProjectivePoint(Vec<F>{F(1), s.value});
  }

  int dim() const { return static_cast<int>(h_.size()) - 1; }
  const Vec<F>& hom() const { return h_; }

  bool is_ideal() const { return is_zero(h_[0], max_abs(h_)); }

  /// Dehomogenized coordinates; the point must be finite.
  Vec<F> affine() const {
    if (is_ideal()) fail(ErrorCode::OutOfRange, "ideal point has no affine coordinates");
    Vec<F> p(h_.size() - 1);
    for (std::size_t i = 1; i < h_.size(); ++i) p[i - 1] = h_[i] / h_[0];
    return p;
  }

  /// Direction components (entries 1..n); meaningful for ideal points.
  Vec<F> direction() const { return Vec<F>(h_.begin() + 1, h_.end()); }

  /// Chart value on the projective line (2-component points only).
  ProjectiveScalar<F> chart_value() const {
    if (h_.size() != 2)
      fail(ErrorCode::DimensionMismatch, "chart_value needs a point on a line");
    if (is_ideal()) return ProjectiveScalar<F>::infinity();
    return ProjectiveScalar<F>::of(h_[1] / h_[0]);
  }

 private:
  // Rescale so the largest component has magnitude one. Keeps float
  // brackets conditioned and rational coordinates small.
  void normalize() {
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t i = 0; i < h_.size(); ++i) {
      double m = magnitude(h_[i]);
      if (m > best_mag) {
        best_mag = m;
        best = i;
      }
    }
    if constexpr (num_traits<F>::is_exact) {
      if (h_[best] == F(0)) {
        while (h_[best] == F(0)) ++best;
      }
    }
    F scale = F(1) / h_[best];
    for (F& c : h_) c *= scale;
  }

  Vec<F> h_;
};

/// Equality of projective points: proportional homogeneous coordinates.
template <class F>
bool proportional(const ProjectivePoint<F>& a, const ProjectivePoint<F>& b) {
  const Vec<F>& u = a.hom();
  const Vec<F>& v = b.hom();
  if (u.size() != v.size()) return false;
  double scale = max_abs(u) * max_abs(v);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (!is_zero(u[i] * v[j] - u[j] * v[i], scale)) return false;
  return true;
}

/// True if all points lie on one projective line: every 3x3 minor of the
/// stacked homogeneous coordinates vanishes (relative tolerance in float
/// mode, exactly in rational mode).
template <class F>
bool are_collinear(const std::vector<ProjectivePoint<F>>& pts,
                   double rel_tol = tol::kCollinear) {
  if (pts.size() < 3) return true;
  const std::size_t m = pts[0].hom().size();
  for (const auto& p : pts)
    if (p.hom().size() != m)
      fail(ErrorCode::DimensionMismatch, "mixed dimensions in collinearity test");
  if (m < 3) return true;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      for (std::size_t c = b + 1; c < pts.size(); ++c) {
        const Vec<F>&u = pts[a].hom(), &v = pts[b].hom(), &w = pts[c].hom();
        double scale = max_abs(u) * max_abs(v) * max_abs(w);
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
              F minor = u[i] * (v[j] * w[k] - v[k] * w[j]) -
                        u[j] * (v[i] * w[k] - v[k] * w[i]) +
                        u[k] * (v[i] * w[j] - v[j] * w[i]);
              if constexpr (num_traits<F>::is_exact) {
                if (minor != F(0)) return false;
              } else {
                if (magnitude(minor) > rel_tol * std::max(scale, 1e-300))
                  return false;
              }
            }
          }
        }
      }
    }
  }
  return true;
}

/// Ordered quadruple of collinear points, the argument of the cross ratio.
template <class F>
struct CollinearQuad {
  std::array<ProjectivePoint<F>, 4> points;

  CollinearQuad(ProjectivePoint<F> x, ProjectivePoint<F> y, ProjectivePoint<F> z,
                ProjectivePoint<F> t)
      : points{std::move(x), std::move(y), std::move(z), std::move(t)} {
    if (!are_collinear(std::vector<ProjectivePoint<F>>(points.begin(), points.end())))
      fail(ErrorCode::NonCollinear, "quad points do not lie on one line");
  }
};

namespace detail {

// Homogeneous parameters (alpha : beta) of each point relative to the basis
// pair (P, Q) on the line, all scaled by the same pivot determinant.
template <class F>
std::pair<F, F> line_parameters(const Vec<F>& p, const Vec<F>& q, const Vec<F>& x) {
  // Pick the coordinate pair giving the best-conditioned 2x2 system.
  std::size_t r = 0, s = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      double m = magnitude(p[i] * q[j] - p[j] * q[i]);
      if (m > best) {
        best = m;
        r = i;
        s = j;
      }
    }
  }
  if constexpr (num_traits<F>::is_exact) {
    if (p[r] * q[s] - p[s] * q[r] == F(0)) {
      for (std::size_t i = 0; i < p.size() && best <= 0; ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
          if (p[i] * q[j] - p[j] * q[i] != F(0)) {
            r = i;
            s = j;
            best = 1.0;
            break;
          }
    }
  }
  F alpha = x[r] * q[s] - x[s] * q[r];
  F beta = p[r] * x[s] - p[s] * x[r];
  return {alpha, beta};
}

template <class F>
bool independent(const ProjectivePoint<F>& a, const ProjectivePoint<F>& b) {
  return !proportional(a, b);
}

}  // namespace detail

/// Cross ratio of four collinear points. On an affine chart x,y,z,t this is
/// (x-z)/(x-t) * (y-t)/(y-z); factors through the point at infinity collapse
/// to 1 by the projective convention. Invariant under collineations.
template <class F>
ProjectiveScalar<F> cross_ratio(const CollinearQuad<F>& quad) {
  const auto& pts = quad.points;
  // Basis pair: the most independent pair among the four points.
  int bi = -1, bj = -1;
  double best = -1.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (!detail::independent(pts[i], pts[j])) continue;
      const Vec<F>&u = pts[i].hom(), &v = pts[j].hom();
      double m = 0.0;
      for (std::size_t r = 0; r < u.size(); ++r)
        for (std::size_t s = r + 1; s < u.size(); ++s)
          m = std::max(m, magnitude(u[r] * v[s] - u[s] * v[r]));
      if (m > best) {
        best = m;
        bi = i;
        bj = j;
      }
    }
  }
  if (bi < 0)
    fail(ErrorCode::IndeterminateCrossRatio, "all four points coincide");

  const Vec<F>&p = pts[bi].hom(), &q = pts[bj].hom();
  std::array<F, 4> alpha, beta;
  double scale = 0.0;
  for (int k = 0; k < 4; ++k) {
    auto [a, b] = detail::line_parameters(p, q, pts[k].hom());
    alpha[k] = a;
    beta[k] = b;
    scale = std::max(scale, std::max(magnitude(a), magnitude(b)));
  }
  auto bracket = [&](int k, int l) { return alpha[k] * beta[l] - alpha[l] * beta[k]; };
  const double bscale = scale * scale;

  F num = bracket(0, 2) * bracket(1, 3);
  F den = bracket(0, 3) * bracket(1, 2);
  const bool num_zero = is_zero(bracket(0, 2), bscale) || is_zero(bracket(1, 3), bscale);
  const bool den_zero = is_zero(bracket(0, 3), bscale) || is_zero(bracket(1, 2), bscale);
  if (num_zero && den_zero)
    fail(ErrorCode::IndeterminateCrossRatio, "cross ratio of the form 0/0");
  if (den_zero) return ProjectiveScalar<F>::infinity();
  return ProjectiveScalar<F>::of(num / den);
}

template <class F>
ProjectiveScalar<F> cross_ratio(const ProjectivePoint<F>& x, const ProjectivePoint<F>& y,
                                const ProjectivePoint<F>& z, const ProjectivePoint<F>& t) {
  return cross_ratio(CollinearQuad<F>(x, y, z, t));
}

/// Cross ratio of four chart values on one line, infinity handled by the
/// projective convention.
template <class F>
ProjectiveScalar<F> cross_ratio_on_chart(const ProjectiveScalar<F>& x,
                                         const ProjectiveScalar<F>& y,
                                         const ProjectiveScalar<F>& z,
                                         const ProjectiveScalar<F>& t) {
  return cross_ratio(ProjectivePoint<F>::on_line(x), ProjectivePoint<F>::on_line(y),
                     ProjectivePoint<F>::on_line(z), ProjectivePoint<F>::on_line(t));
}

/// Invertible projective transformation, a matrix up to nonzero scale.
template <class F>
class Collineation {
 public:
  explicit Collineation(Mat<F> m) : m_(std::move(m)) {
    const std::size_t n = m_.size();
    for (const auto& row : m_)
      if (row.size() != n)
        fail(ErrorCode::DimensionMismatch, "collineation matrix must be square");
    double scale = 1.0;
    for (const auto& row : m_) scale = std::max(scale, max_abs(row));
    F d = det(m_);
    if (is_zero(d, std::pow(scale, static_cast<double>(n))))
      fail(ErrorCode::DegenerateInput, "collineation matrix is singular");
  }

  static Collineation identity(int dim) {
    return Collineation(identity_matrix<F>(static_cast<std::size_t>(dim) + 1));
  }

  int dim() const { return static_cast<int>(m_.size()) - 1; }
  const Mat<F>& matrix() const { return m_; }

  Collineation compose(const Collineation& other) const {
    return Collineation(mat_mul(m_, other.m_));
  }

  Collineation inverse() const { return Collineation(mat_inverse(m_)); }

 private:
  Mat<F> m_;
};

template <class F>
ProjectivePoint<F> apply_collineation(const Collineation<F>& g,
                                      const ProjectivePoint<F>& p) {
  if (g.dim() != p.dim())
    fail(ErrorCode::DimensionMismatch, "collineation and point dimensions differ");
  return ProjectivePoint<F>(mat_vec(g.matrix(), p.hom()));
}

/// Fourth harmonic point: D on line AB with [A,B,C,D] = -1. Solved on the
/// line's parameter basis: C = alpha*A + beta*B gives D = alpha*A - beta*B.
template <class F>
ProjectivePoint<F> harmonic_conjugate_analytic(const ProjectivePoint<F>& a,
                                               const ProjectivePoint<F>& b,
                                               const ProjectivePoint<F>& c) {
  if (proportional(a, b))
    fail(ErrorCode::DegenerateInput, "harmonic base points coincide");
  if (proportional(c, a) || proportional(c, b))
    fail(ErrorCode::DegenerateInput, "C coincides with a base point");
  if (!are_collinear(std::vector<ProjectivePoint<F>>{a, b, c}))
    fail(ErrorCode::NonCollinear, "A, B, C are not collinear");
  auto [alpha, beta] = detail::line_parameters(a.hom(), b.hom(), c.hom());
  Vec<F> d(a.hom().size());
  for (std::size_t i = 0; i < d.size(); ++i)
    d[i] = alpha * a.hom()[i] - beta * b.hom()[i];
  return ProjectivePoint<F>(std::move(d));
}

/// Affine chart of a projective plane embedded in n-space. Projective points
/// of the plane map to 3-component homogeneous coordinates and back, so the
/// planar join/meet constructions reduce to cross products.
template <class F>
class PlaneChart {
 public:
  PlaneChart(Vec<F> origin, Vec<F> e1, Vec<F> e2)
      : origin_(std::move(origin)), e1_(std::move(e1)), e2_(std::move(e2)) {
    if (origin_.size() != e1_.size() || e1_.size() != e2_.size())
      fail(ErrorCode::DimensionMismatch, "chart frame dimensions differ");
    pick_rows();
  }

  /// Chart of the plane through three projective points in general position
  /// (at most one ideal among the first two; ideal points contribute their
  /// directions).
  static PlaneChart through(const ProjectivePoint<F>& p0, const ProjectivePoint<F>& p1,
                            const ProjectivePoint<F>& p2) {
    std::array<const ProjectivePoint<F>*, 3> pts{&p0, &p1, &p2};
    const ProjectivePoint<F>* base = nullptr;
    for (auto* p : pts)
      if (!p->is_ideal()) {
        base = p;
        break;
      }
    if (base == nullptr)
      fail(ErrorCode::DegenerateInput, "cannot chart the ideal plane");
    Vec<F> origin = base->affine();
    std::vector<Vec<F>> dirs;
    for (auto* p : pts) {
      if (p == base) continue;
      dirs.push_back(p->is_ideal() ? p->direction() : vec_sub(p->affine(), origin));
    }
    return PlaneChart(std::move(origin), std::move(dirs[0]), std::move(dirs[1]));
  }

  int ambient_dim() const { return static_cast<int>(origin_.size()); }

  /// Ambient homogeneous point -> plane homogeneous (w : u : v).
  ProjectivePoint<F> to_chart(const ProjectivePoint<F>& p) const {
    const Vec<F>& h = p.hom();
    if (static_cast<int>(h.size()) != ambient_dim() + 1)
      fail(ErrorCode::DimensionMismatch, "point not in the chart's ambient space");
    Mat<F> m(3, Vec<F>(3));
    Vec<F> rhs(3);
    for (int i = 0; i < 3; ++i) {
      std::size_t r = rows_[i];
      m[i][0] = r == 0 ? F(1) : origin_[r - 1];
      m[i][1] = r == 0 ? F(0) : e1_[r - 1];
      m[i][2] = r == 0 ? F(0) : e2_[r - 1];
      rhs[i] = h[r];
    }
    Vec<F> coeffs = solve_linear(m, rhs);
    return ProjectivePoint<F>(std::move(coeffs));
  }

  /// Plane homogeneous (w : u : v) -> ambient homogeneous point.
  ProjectivePoint<F> from_chart(const ProjectivePoint<F>& c) const {
    const Vec<F>& h = c.hom();
    Vec<F> out(origin_.size() + 1);
    out[0] = h[0];
    for (std::size_t i = 0; i < origin_.size(); ++i)
      out[i + 1] = h[0] * origin_[i] + h[1] * e1_[i] + h[2] * e2_[i];
    return ProjectivePoint<F>(std::move(out));
  }

  Vec<F> from_chart_affine(const ProjectivePoint<F>& c) const {
    return from_chart(c).affine();
  }

 private:
  // Rows of the (n+1)x3 frame matrix forming the best-pivoted 3x3 block.
  void pick_rows() {
    const std::size_t n1 = origin_.size() + 1;
    auto entry = [&](std::size_t r, int c) -> F {
      if (r == 0) return c == 0 ? F(1) : F(0);
      if (c == 0) return origin_[r - 1];
      return c == 1 ? e1_[r - 1] : e2_[r - 1];
    };
    double best = -1.0;
    bool found_exact = false;
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = i + 1; j < n1; ++j) {
        for (std::size_t k = j + 1; k < n1; ++k) {
          Mat<F> m{{entry(i, 0), entry(i, 1), entry(i, 2)},
                   {entry(j, 0), entry(j, 1), entry(j, 2)},
                   {entry(k, 0), entry(k, 1), entry(k, 2)}};
          F d = det3(m);
          double mag = magnitude(d);
          bool nonzero = num_traits<F>::is_exact ? d != F(0) : mag > 0.0;
          if ((nonzero && !found_exact) || mag > best) {
            best = mag;
            rows_ = {i, j, k};
            if (nonzero) found_exact = true;
          }
        }
      }
    }
    if (!found_exact && best <= 0.0)
      fail(ErrorCode::DegenerateInput, "chart frame directions are dependent");
  }

  Vec<F> origin_, e1_, e2_;
  std::array<std::size_t, 3> rows_{0, 1, 2};
};

namespace detail {

template <class F>
Vec<F> meet_or_fail(const Vec<F>& l1, const Vec<F>& l2, const char* what) {
  Vec<F> p = cross3(l1, l2);
  if (vec_is_zero(p, max_abs(l1) * max_abs(l2)))
    fail(ErrorCode::DegenerateAuxiliary, what);
  return p;
}

}  // namespace detail

/// Harmonic conjugate by the complete-quadrangle construction: joins and
/// meets only, no measurement. E is off line AB; F lies on line CE. The
/// result is independent of the auxiliary choice and equals the analytic
/// conjugate.
template <class F>
ProjectivePoint<F> harmonic_conjugate_synthetic(const ProjectivePoint<F>& a,
                                                const ProjectivePoint<F>& b,
                                                const ProjectivePoint<F>& c,
                                                const ProjectivePoint<F>& e,
                                                const ProjectivePoint<F>& f) {
  if (proportional(a, b) || proportional(c, a) || proportional(c, b))
    fail(ErrorCode::DegenerateInput, "base points must be three distinct points");
  if (!are_collinear(std::vector<ProjectivePoint<F>>{a, b, c}))
    fail(ErrorCode::NonCollinear, "A, B, C are not collinear");
  if (are_collinear(std::vector<ProjectivePoint<F>>{a, b, e}))
    fail(ErrorCode::DegenerateAuxiliary, "E lies on the base line");
  if (!are_collinear(std::vector<ProjectivePoint<F>>{c, e, f}))
    fail(ErrorCode::DegenerateAuxiliary, "F is not on line CE");
  if (proportional(f, c) || proportional(f, e))
    fail(ErrorCode::DegenerateAuxiliary, "F coincides with C or E");
  if (are_collinear(std::vector<ProjectivePoint<F>>{a, b, f}))
    fail(ErrorCode::DegenerateAuxiliary, "F lies on the base line");

  PlaneChart<F> chart = PlaneChart<F>::through(a, b, e);
  Vec<F> ca = chart.to_chart(a).hom();
  Vec<F> cb = chart.to_chart(b).hom();
  Vec<F> ce = chart.to_chart(e).hom();
  Vec<F> cf = chart.to_chart(f).hom();

  Vec<F> line_ae = detail::meet_or_fail(ca, ce, "join A,E undefined");
  Vec<F> line_bf = detail::meet_or_fail(cb, cf, "join B,F undefined");
  Vec<F> g = detail::meet_or_fail(line_ae, line_bf, "meet AE,BF undefined");
  Vec<F> line_af = detail::meet_or_fail(ca, cf, "join A,F undefined");
  Vec<F> line_be = detail::meet_or_fail(cb, ce, "join B,E undefined");
  Vec<F> h = detail::meet_or_fail(line_af, line_be, "meet AF,BE undefined");
  Vec<F> line_gh = detail::meet_or_fail(g, h, "join of diagonal points undefined");
  Vec<F> base = detail::meet_or_fail(ca, cb, "join A,B undefined");
  Vec<F> d = detail::meet_or_fail(line_gh, base, "meet GH,AB undefined");
  return chart.from_chart(ProjectivePoint<F>(std::move(d)));
}

/// Default auxiliary picker for the synthetic construction: axis-aligned
/// affine offsets for E, and F = E + C on the line CE. Retries a handful of
/// candidates before giving up.
template <class F>
std::pair<ProjectivePoint<F>, ProjectivePoint<F>> pick_synthetic_auxiliaries(
    const ProjectivePoint<F>& a, const ProjectivePoint<F>& b,
    const ProjectivePoint<F>& c) {
  const int n = a.dim();
  Vec<F> base(static_cast<std::size_t>(n), F(0));
  if (!a.is_ideal()) base = a.affine();
  else if (!b.is_ideal()) base = b.affine();

  for (int axis = 0; axis < n; ++axis) {
    for (int s : {1, -1, 2}) {
      Vec<F> cand = base;
      cand[axis] += F(s);
      ProjectivePoint<F> e = ProjectivePoint<F>::from_affine(cand);
      if (are_collinear(std::vector<ProjectivePoint<F>>{a, b, e})) continue;
      for (int t : {1, 2}) {
        Vec<F> fh(e.hom().size());
        for (std::size_t i = 0; i < fh.size(); ++i)
          fh[i] = e.hom()[i] + F(t) * c.hom()[i];
        if (vec_is_zero(fh, max_abs(e.hom()) + max_abs(c.hom()))) continue;
        ProjectivePoint<F> f{fh};
        if (proportional(f, c) || proportional(f, e)) continue;
        if (are_collinear(std::vector<ProjectivePoint<F>>{a, b, f})) continue;
        return {e, f};
      }
    }
  }
  fail(ErrorCode::DegenerateAuxiliary, "no usable auxiliary pair found");
}

/// X lies on the closed segment from P to Q that avoids R (all collinear,
/// P, Q, R pairwise distinct). Separation of point pairs on the projective
/// line is a cross-ratio sign test, so this is exact in rational mode.
template <class F>
bool on_segment_avoiding(const ProjectivePoint<F>& p, const ProjectivePoint<F>& q,
                         const ProjectivePoint<F>& r, const ProjectivePoint<F>& x) {
  if (proportional(x, p) || proportional(x, q)) return true;
  if (proportional(x, r)) return false;
  ProjectiveScalar<F> cr = cross_ratio(p, q, x, r);
  if (cr.infinite) return false;  // cannot happen for distinct inputs
  return cr.value < F(0);
}

/// Result of the synthetic coordinatization: the dyadic m / 2^depth nearest
/// the target's frame coordinate, with an out-of-range flag when the target
/// was outside the unit segment of the frame.
struct VonStaudtCoordinate {
  Rational value;
  bool in_range = true;
  int depth = 0;

  double to_double() const { return value.template convert_to<double>(); }
};

/// Assigns the dyadic coordinate of X in the projective scale fixed by
/// (P0 -> 0, P1 -> 1, Pinf -> infinity), using only iterated synthetic
/// harmonic bisection: the midpoint of the current segment is the harmonic
/// conjugate of Pinf, and the half containing X is chosen by a separation
/// test. After `depth` bisections the error is at most 2^-depth.
template <class F>
VonStaudtCoordinate von_staudt_coordinate(const ProjectivePoint<F>& p0,
                                          const ProjectivePoint<F>& p1,
                                          const ProjectivePoint<F>& pinf,
                                          const ProjectivePoint<F>& x, int depth) {
  if (depth < 1) fail(ErrorCode::OutOfRange, "depth must be positive");
  if (proportional(p0, p1) || proportional(p0, pinf) || proportional(p1, pinf))
    fail(ErrorCode::DegenerateFrame, "frame points must be pairwise distinct");
  if (!are_collinear(std::vector<ProjectivePoint<F>>{p0, p1, pinf, x}))
    fail(ErrorCode::NonCollinear, "frame and target must be collinear");
  if (proportional(x, pinf))
    fail(ErrorCode::DegenerateInput, "target coincides with the infinity point");

  auto midpoint = [&](const ProjectivePoint<F>& lo, const ProjectivePoint<F>& hi) {
    auto [e, f] = pick_synthetic_auxiliaries(lo, hi, pinf);
    return harmonic_conjugate_synthetic(lo, hi, pinf, e, f);
  };

  if (!on_segment_avoiding(p0, p1, pinf, x)) {
    bool near_zero = on_segment_avoiding(p0, pinf, p1, x);
    return {near_zero ? Rational(0) : Rational(1), false, depth};
  }

  ProjectivePoint<F> lo_pt = p0, hi_pt = p1;
  Rational lo(0), hi(1);
  for (int k = 0; k < depth; ++k) {
    ProjectivePoint<F> mid_pt = midpoint(lo_pt, hi_pt);
    Rational mid = (lo + hi) / 2;
    if (proportional(x, mid_pt)) return {mid, true, depth};
    if (on_segment_avoiding(lo_pt, mid_pt, pinf, x)) {
      hi_pt = mid_pt;
      hi = mid;
    } else {
      lo_pt = mid_pt;
      lo = mid;
    }
  }
  ProjectivePoint<F> mid_pt = midpoint(lo_pt, hi_pt);
  bool lower_half = proportional(x, mid_pt)
                        ? true
                        : on_segment_avoiding(lo_pt, mid_pt, pinf, x);
  return {lower_half ? lo : hi, true, depth};
}

}  // namespace projmet
