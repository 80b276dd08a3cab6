#pragma once

#include "projmet/projective.hpp"

namespace projmet {

/// The absolute: a real symmetric matrix up to scale, with cached inertia.
class Quadric {
 public:
  explicit Quadric(Mat<double> m) : q_(std::move(m)) {
    const std::size_t n = q_.size();
    if (n < 2) fail(ErrorCode::DimensionMismatch, "quadric needs size >= 2");
    double scale = 0.0;
    for (const auto& row : q_) {
      if (row.size() != n) fail(ErrorCode::DimensionMismatch, "quadric not square");
      scale = std::max(scale, max_abs(row));
    }
    if (scale == 0.0) fail(ErrorCode::DegenerateInput, "zero quadric");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (std::fabs(q_[i][j] - q_[j][i]) > 1e-12 * scale)
          fail(ErrorCode::DegenerateInput, "quadric matrix not symmetric");
    inertia_ = symmetric_inertia(q_);
  }

  /// Sum of squares of all homogeneous coordinates: the absolute of elliptic
  /// geometry on projective n-space.
  static Quadric elliptic_absolute(int n) {
    return Quadric(identity_matrix<double>(static_cast<std::size_t>(n) + 1));
  }

  /// The standard cone u_1^2 + ... + u_n^2 - u_0^2 = 0 whose interior models
  /// the hyperbolic metric.
  static Quadric standard_cone(int n) {
    Mat<double> m = identity_matrix<double>(static_cast<std::size_t>(n) + 1);
    m[0][0] = -1.0;
    return Quadric(std::move(m));
  }

  int dim() const { return static_cast<int>(q_.size()) - 1; }
  const Mat<double>& matrix() const { return q_; }
  /// (negative, zero, positive) eigenvalue counts.
  const std::array<int, 3>& inertia() const { return inertia_; }

  bool is_definite() const { return inertia_[1] == 0 && (inertia_[0] == 0 || inertia_[2] == 0); }
  bool is_lorentz() const {
    return inertia_[1] == 0 && (inertia_[0] == 1 || inertia_[2] == 1);
  }

  double evaluate(const Vec<double>& h) const { return dot(h, mat_vec(q_, h)); }
  double pair(const Vec<double>& g, const Vec<double>& h) const {
    return dot(g, mat_vec(q_, h));
  }

  /// The absolute seen through collineation g: points transform by g, the
  /// quadric by the inverse-transpose conjugation.
  Quadric conjugated_by(const Collineation<double>& g) const {
    Mat<double> inv = mat_inverse(g.matrix());
    const std::size_t n = q_.size();
    Mat<double> it(n, Vec<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) it[i][j] = inv[j][i];
    Mat<double> m = mat_mul(it, mat_mul(q_, inv));
    // Symmetrize away the float noise.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double avg = 0.5 * (m[i][j] + m[j][i]);
        m[i][j] = m[j][i] = avg;
      }
    return Quadric(std::move(m));
  }

 private:
  Mat<double> q_;
  std::array<int, 3> inertia_;
};

/// The two intersections of line AB with the quadric, as complex projective
/// points alpha*A + beta*B; a conjugate pair when the line misses the real
/// absolute. A double root raises Tangent, a line inside the quadric raises
/// LineInAbsolute.
inline std::pair<ProjectivePoint<Complex>, ProjectivePoint<Complex>>
absolute_intersections(const Quadric& q, const ProjectivePoint<double>& a,
                       const ProjectivePoint<double>& b) {
  if (a.dim() != q.dim() || b.dim() != q.dim())
    fail(ErrorCode::DimensionMismatch, "points do not match the quadric dimension");
  if (proportional(a, b))
    fail(ErrorCode::DegenerateInput, "intersection line needs two distinct points");

  const double qa = q.evaluate(a.hom());
  const double qb = q.pair(a.hom(), b.hom());
  const double qc = q.evaluate(b.hom());
  double qscale = 0.0;
  for (const auto& row : q.matrix()) qscale = std::max(qscale, max_abs(row));
  const double cscale = qscale * max_abs(a.hom()) * max_abs(b.hom());

  auto combine = [&](const Complex& alpha, const Complex& beta) {
    Vec<Complex> h(a.hom().size());
    for (std::size_t i = 0; i < h.size(); ++i)
      h[i] = alpha * a.hom()[i] + beta * b.hom()[i];
    return ProjectivePoint<Complex>(std::move(h));
  };

  const bool za = std::fabs(qa) <= tol::kDegenerate * cscale;
  const bool zb = std::fabs(qb) <= tol::kDegenerate * cscale;
  const bool zc = std::fabs(qc) <= tol::kDegenerate * cscale;
  if (za && zb && zc)
    fail(ErrorCode::LineInAbsolute, "the whole line satisfies the quadric");

  const double disc = qb * qb - qa * qc;
  if (std::fabs(disc) <= tol::kDegenerate * cscale * cscale)
    fail(ErrorCode::Tangent, "line is tangent to the absolute");

  // Roots of qa m^2 + 2 qb m + qc = 0 with the point alpha A + beta B at
  // (alpha : beta) = (m : 1); a root at A itself appears as (1 : 0).
  Complex sdisc = std::sqrt(Complex(disc, 0.0));
  if (za) {
    return {combine(Complex(1.0), Complex(0.0)),
            combine(Complex(-qc), Complex(2.0 * qb))};
  }
  Complex m1 = (-qb + sdisc) / qa;
  Complex m2 = (-qb - sdisc) / qa;
  return {combine(m1, Complex(1.0)), combine(m2, Complex(1.0))};
}

enum class CkConvention { Elliptic, Hyperbolic };

/// Cayley-Klein distance defined by the absolute. Elliptic (definite Q):
/// scale * |Im log [A,B,U,V]|, the spherical geodesic distance folded into
/// [0, pi/2] at the default scale 1/2. Hyperbolic (Lorentz Q, points inside
/// the cone): scale * log of the chord-ordered real cross ratio, identical
/// to the Hilbert distance of the cone's interior.
inline double ck_distance(const Quadric& q, const ProjectivePoint<double>& a,
                          const ProjectivePoint<double>& b,
                          CkConvention convention, double scale = 0.5) {
  if (!(scale > 0.0)) fail(ErrorCode::OutOfRange, "scale must be positive");
  if (proportional(a, b)) return 0.0;

  if (convention == CkConvention::Elliptic) {
    if (!q.is_definite())
      fail(ErrorCode::DegenerateInput, "elliptic convention needs a definite absolute");
    auto [u, v] = absolute_intersections(q, a, b);
    Vec<Complex> ah(a.hom().begin(), a.hom().end());
    Vec<Complex> bh(b.hom().begin(), b.hom().end());
    ProjectiveScalar<Complex> cr = cross_ratio(
        ProjectivePoint<Complex>(ah), ProjectivePoint<Complex>(bh), u, v);
    if (cr.infinite)
      fail(ErrorCode::Tangent, "degenerate cross ratio against the absolute");
    return scale * std::fabs(std::imag(std::log(cr.value)));
  }

  if (!q.is_lorentz())
    fail(ErrorCode::DegenerateInput, "hyperbolic convention needs a Lorentz absolute");
  // Normalize the sign so the cone interior is the negative side.
  const double side = q.inertia()[0] == 1 ? 1.0 : -1.0;
  if (side * q.evaluate(a.hom()) >= 0.0 || side * q.evaluate(b.hom()) >= 0.0)
    fail(ErrorCode::OutsideDomain, "points must lie inside the cone");

  auto [u, v] = absolute_intersections(q, a, b);
  auto realize = [](const ProjectivePoint<Complex>& p) {
    Vec<double> h(p.hom().size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = p.hom()[i].real();
    return ProjectivePoint<double>(std::move(h));
  };
  // Interior points see two real intersections.
  ProjectivePoint<double> ur = realize(u), vr = realize(v);
  ProjectiveScalar<double> cr = cross_ratio(ur, vr, b, a);
  if (cr.infinite || cr.value <= 0.0)
    fail(ErrorCode::Tangent, "degenerate chord against the absolute");
  double r = cr.value;
  if (r < 1.0) r = 1.0 / r;  // chord order U, A, B, V
  return scale * std::log(r);
}

/// Unordered pair of line directions through a common point of the plane.
struct LinePair {
  Vec<double> l, m;

  LinePair(Vec<double> l_dir, Vec<double> m_dir)
      : l(std::move(l_dir)), m(std::move(m_dir)) {
    if (l.size() != 2 || m.size() != 2)
      fail(ErrorCode::DimensionMismatch, "line directions must be planar");
    if (vec_is_zero(l, max_abs(l)) || vec_is_zero(m, max_abs(m)))
      fail(ErrorCode::ZeroDirection, "line direction must be nonzero");
  }
};

/// Euclidean angle between two lines via the complex cross ratio with the
/// isotropic directions (1, i) and (1, -i): the cross ratio is
/// e^{2i(alpha-beta)}, and half the principal argument folds the angle into
/// [0, pi/2].
inline double laguerre_angle(const LinePair& p) {
  ProjectivePoint<Complex> x(Vec<Complex>{Complex(p.l[0]), Complex(p.l[1])});
  ProjectivePoint<Complex> y(Vec<Complex>{Complex(p.m[0]), Complex(p.m[1])});
  ProjectivePoint<Complex> u(Vec<Complex>{Complex(1.0), Complex(0.0, 1.0)});
  ProjectivePoint<Complex> v(Vec<Complex>{Complex(1.0), Complex(0.0, -1.0)});
  ProjectiveScalar<Complex> cr = cross_ratio(x, y, u, v);
  if (cr.infinite)
    fail(ErrorCode::ZeroDirection, "degenerate direction pair");
  return 0.5 * std::fabs(std::imag(std::log(cr.value)));
}

}  // namespace projmet
