#pragma once

#include "projmet/convex.hpp"

namespace projmet {

/// Multiplier applied to the log cross ratio. The modern convention is 1/2,
/// which makes the unit ball a model of the hyperbolic metric; 1 is the
/// original normalization.
struct HilbertConfig {
  double scale = 0.5;

  HilbertConfig() = default;
  explicit HilbertConfig(double s) : scale(s) {
    if (!(s > 0.0)) fail(ErrorCode::OutOfRange, "scale must be positive");
  }
};

/// Cross ratio [X,Y,B,A] along the chord through A and B, computed from the
/// chord parameters as the product of signed segment-length ratios
/// (YA/YB)*(XB/XA). Exact in rational mode; in float mode a chord hitting
/// the near-boundary guard raises NumericallyUnstable.
template <class F>
F hilbert_cross_ratio(const ConvexBody<F>& body, const Vec<F>& a, const Vec<F>& b) {
  Chord<F> ch = chord(body, a, b);
  if constexpr (!num_traits<F>::is_exact) {
    double xa = -num_traits<F>::to_double(ch.t_x);
    double by = num_traits<F>::to_double(ch.t_y) - 1.0;
    double len = num_traits<F>::to_double(ch.t_y - ch.t_x);
    if (std::min(xa, by) < tol::kBoundaryGuard * len)
      fail(ErrorCode::NumericallyUnstable,
           "chord endpoint nearly coincides with an input point");
  }
  return ((ch.t_x - F(1)) / ch.t_x) * (ch.t_y / (ch.t_y - F(1)));
}

/// Hilbert distance: scale * log [X,Y,B,A]. Zero when A = B, positive and
/// symmetric otherwise.
template <class F>
double hilbert_distance(const ConvexBody<F>& body, const Vec<F>& a, const Vec<F>& b,
                        const HilbertConfig& cfg = HilbertConfig()) {
  if (vec_is_zero(vec_sub(a, b), std::max(max_abs(a), max_abs(b)))) {
    if (classify(body, a) != Region::Interior)
      fail(ErrorCode::PointsNotInterior, "distance needs interior points");
    return 0.0;
  }
  F cr = hilbert_cross_ratio(body, a, b);
  return cfg.scale * std::log(num_traits<F>::to_double(cr));
}

/// Point on the chord through A and B at Hilbert distance s from A toward B.
/// Closed form: the cross-ratio equation is a Moebius equation in the chord
/// parameter.
inline Vec<double> geodesic_point(const ConvexBody<double>& body, const Vec<double>& a,
                                  const Vec<double>& b, double s,
                                  const HilbertConfig& cfg = HilbertConfig()) {
  double total = hilbert_distance(body, a, b, cfg);
  if (s < -1e-12 || s > total + 1e-9)
    fail(ErrorCode::OutOfRange, "arc length outside [0, d(A,B)]");
  s = std::clamp(s, 0.0, total);
  Chord<double> ch = chord(body, a, b);
  double k = std::exp(s / cfg.scale);
  double t = ch.t_x * ch.t_y * (k - 1.0) / (k * ch.t_x - ch.t_y);
  return vec_axpy(ch.origin, t, ch.dir);
}

/// Boundary samples of the Hilbert ball of radius r: n_samples directions
/// uniform in angle (2D) or on a Fibonacci sphere grid (3D), each solved in
/// closed form on its chord.
inline std::vector<Vec<double>> ball_boundary(const ConvexBody<double>& body,
                                              const Vec<double>& center, double r,
                                              int n_samples,
                                              const HilbertConfig& cfg = HilbertConfig()) {
  if (!(r > 0.0)) fail(ErrorCode::OutOfRange, "radius must be positive");
  if (n_samples < 3) fail(ErrorCode::OutOfRange, "need at least 3 samples");
  if (classify(body, center) != Region::Interior)
    fail(ErrorCode::PointsNotInterior, "ball center must be interior");
  const int dim = body.dim();
  if (dim != 2 && dim != 3)
    fail(ErrorCode::DimensionMismatch, "ball sampling supports dimensions 2 and 3");

  std::vector<Vec<double>> dirs;
  dirs.reserve(n_samples);
  if (dim == 2) {
    for (int i = 0; i < n_samples; ++i) {
      double th = 2.0 * M_PI * i / n_samples;
      dirs.push_back({std::cos(th), std::sin(th)});
    }
  } else {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n_samples; ++i) {
      double z = 1.0 - 2.0 * (i + 0.5) / n_samples;
      double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
      dirs.push_back({rad * std::cos(golden * i), rad * std::sin(golden * i), z});
    }
  }

  const double k = std::exp(r / cfg.scale);
  std::vector<Vec<double>> points;
  points.reserve(n_samples);
  double step = 1e-6 * body.diameter();
  for (const auto& u : dirs) {
    Vec<double> probe = vec_axpy(center, step, u);
    double h = step;
    while (classify(body, probe) != Region::Interior && h > 1e-300) {
      h *= 0.5;
      probe = vec_axpy(center, h, u);
    }
    Chord<double> ch = chord(body, center, probe);
    // Chord parameters are in units of the probe step; radius solve as in
    // geodesic_point with A = center.
    double t = ch.t_x * ch.t_y * (k - 1.0) / (k * ch.t_x - ch.t_y);
    points.push_back(vec_axpy(ch.origin, t, ch.dir));
  }
  return points;
}

/// The perspective-at-W construction over the triple (A, C, B): the three
/// chords, the center W = line(U,Z) ^ line(V,T), the transferred points
/// X' = line(U,Z) ^ line(A,B), Y' = line(V,T) ^ line(A,B), D = line(W,C) ^
/// line(A,B), and the four cross ratios. All projective entries live in the
/// section chart (identity for 2D bodies), so an ideal W needs no special
/// handling.
template <class F>
struct TriangleCertificate {
  Vec<F> a, c, b;
  Vec<F> u, v;  // chord through A, C ordered U, A, C, V
  Vec<F> z, t;  // chord through C, B ordered Z, C, B, T
  Vec<F> x, y;  // chord through A, B ordered X, A, B, Y
  PlaneChart<F> chart;
  ProjectivePoint<F> w, xp, yp, d;  // chart homogeneous coordinates
  F cr_ac, cr_cb, cr_ab, cr_prod;
};

/// Residuals of the certificate's cross-ratio identities, recomputed from
/// the stored points. Zero (exactly, in rational mode) for a sound
/// certificate; slack = cr_prod - cr_ab is the triangle-inequality margin.
template <class F>
struct CertificateCheck {
  F residual_ac;    // [U,V,C,A] - [X',Y',D,A]
  F residual_cb;    // [Z,T,B,C] - [X',Y',B,D]
  F residual_prod;  // cr_ac * cr_cb - [X',Y',B,A]
  F slack;          // cr_prod - cr_ab
};

namespace detail {

template <class F>
PlaneChart<F> chart_for_triple(const ConvexBody<F>& body, const Vec<F>& a,
                               const Vec<F>& c, const Vec<F>& b) {
  if (body.dim() == 2)
    return PlaneChart<F>(Vec<F>{F(0), F(0)}, Vec<F>{F(1), F(0)}, Vec<F>{F(0), F(1)});
  return PlaneChart<F>::through(ProjectivePoint<F>::from_affine(a),
                                ProjectivePoint<F>::from_affine(c),
                                ProjectivePoint<F>::from_affine(b));
}

template <class F>
F finite_cross_ratio(const ProjectivePoint<F>& p1, const ProjectivePoint<F>& p2,
                     const ProjectivePoint<F>& p3, const ProjectivePoint<F>& p4) {
  ProjectiveScalar<F> cr = cross_ratio(p1, p2, p3, p4);
  if (cr.infinite)
    fail(ErrorCode::DegenerateConstruction, "unexpected infinite cross ratio");
  return cr.value;
}

template <class F>
Vec<F> meet_lines(const Vec<F>& l1, const Vec<F>& l2, const char* what) {
  Vec<F> p = cross3(l1, l2);
  if (vec_is_zero(p, max_abs(l1) * max_abs(l2)))
    fail(ErrorCode::DegenerateConstruction, what);
  return p;
}

}  // namespace detail

template <class F>
TriangleCertificate<F> triangle_construction(const ConvexBody<F>& body, const Vec<F>& a,
                                             const Vec<F>& c, const Vec<F>& b,
                                             const HilbertConfig& cfg = HilbertConfig()) {
  (void)cfg;
  if (are_collinear(std::vector<ProjectivePoint<F>>{ProjectivePoint<F>::from_affine(a),
                                                    ProjectivePoint<F>::from_affine(c),
                                                    ProjectivePoint<F>::from_affine(b)}))
    fail(ErrorCode::CollinearTriple,
         "collinear triples satisfy the equality case; no construction needed");

  Chord<F> ch_ac = chord(body, a, c);
  Chord<F> ch_cb = chord(body, c, b);
  Chord<F> ch_ab = chord(body, a, b);

  PlaneChart<F> chart = detail::chart_for_triple(body, a, c, b);
  auto lift = [&](const Vec<F>& p) {
    return chart.to_chart(ProjectivePoint<F>::from_affine(p));
  };
  ProjectivePoint<F> pu = lift(ch_ac.x), pv = lift(ch_ac.y);
  ProjectivePoint<F> pz = lift(ch_cb.x), pt = lift(ch_cb.y);
  ProjectivePoint<F> px = lift(ch_ab.x), py = lift(ch_ab.y);
  ProjectivePoint<F> pa = lift(a), pc = lift(c), pb = lift(b);

  if (proportional(pu, pz) || proportional(pv, pt))
    fail(ErrorCode::DegenerateConstruction,
         "chords share a boundary endpoint; perturb the triple slightly");

  Vec<F> line_uz = cross3(pu.hom(), pz.hom());
  Vec<F> line_vt = cross3(pv.hom(), pt.hom());
  Vec<F> line_ab = cross3(pa.hom(), pb.hom());
  ProjectivePoint<F> w{detail::meet_lines(line_uz, line_vt, "lines UZ and VT coincide")};
  ProjectivePoint<F> xp{detail::meet_lines(line_uz, line_ab, "line UZ runs along AB")};
  ProjectivePoint<F> yp{detail::meet_lines(line_vt, line_ab, "line VT runs along AB")};
  Vec<F> line_wc = cross3(w.hom(), pc.hom());
  if (vec_is_zero(line_wc, max_abs(w.hom()) * max_abs(pc.hom())))
    fail(ErrorCode::DegenerateConstruction, "W coincides with C");
  ProjectivePoint<F> d{detail::meet_lines(line_wc, line_ab, "line WC runs along AB")};

  TriangleCertificate<F> cert{
      a,  c,  b,       ch_ac.x, ch_ac.y, ch_cb.x, ch_cb.y, ch_ab.x, ch_ab.y,
      chart, w, xp, yp, d,
      detail::finite_cross_ratio(pu, pv, pc, pa),
      detail::finite_cross_ratio(pz, pt, pb, pc),
      detail::finite_cross_ratio(px, py, pb, pa), F(0)};
  cert.cr_prod = cert.cr_ac * cert.cr_cb;
  return cert;
}

template <class F>
CertificateCheck<F> verify_certificate(const TriangleCertificate<F>& cert) {
  const PlaneChart<F>& chart = cert.chart;
  auto lift = [&](const Vec<F>& p) {
    return chart.to_chart(ProjectivePoint<F>::from_affine(p));
  };
  ProjectivePoint<F> pa = lift(cert.a), pb = lift(cert.b);
  F cr_da = detail::finite_cross_ratio(cert.xp, cert.yp, cert.d, pa);
  F cr_bd = detail::finite_cross_ratio(cert.xp, cert.yp, pb, cert.d);
  F cr_ba = detail::finite_cross_ratio(cert.xp, cert.yp, pb, pa);
  CertificateCheck<F> check;
  check.residual_ac = cert.cr_ac - cr_da;
  check.residual_cb = cert.cr_cb - cr_bd;
  check.residual_prod = cert.cr_prod - cr_ba;
  check.slack = cert.cr_prod - cert.cr_ab;
  return check;
}

template <class F>
struct EqualityTriple {
  Vec<F> a, c, b;
};

namespace detail {

template <class F>
bool strictly_inside_segment(const Vec<F>& s0, const Vec<F>& s1, const Vec<F>& p) {
  if (!are_collinear(std::vector<ProjectivePoint<F>>{ProjectivePoint<F>::from_affine(s0),
                                                     ProjectivePoint<F>::from_affine(s1),
                                                     ProjectivePoint<F>::from_affine(p)}))
    return false;
  Vec<F> dir = vec_sub(s1, s0);
  std::size_t axis = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < dir.size(); ++i)
    if (magnitude(dir[i]) > best) {
      best = magnitude(dir[i]);
      axis = i;
    }
  F t = (p[axis] - s0[axis]) / dir[axis];
  return t > F(0) && t < F(1);
}

template <class F>
int orient_sign(const Vec<F>& a, const Vec<F>& b, const Vec<F>& c) {
  F v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  double scale = std::max({max_abs(a), max_abs(b), max_abs(c), 1.0});
  if (is_zero(v, scale * scale)) return 0;
  return v > F(0) ? 1 : -1;
}

template <class F>
bool segments_cross(const Vec<F>& p1, const Vec<F>& q1, const Vec<F>& p2,
                    const Vec<F>& q2) {
  return orient_sign(p1, q1, p2) * orient_sign(p1, q1, q2) < 0 &&
         orient_sign(p2, q2, p1) * orient_sign(p2, q2, q1) < 0;
}

}  // namespace detail

/// Builds a non-collinear triple realizing equality in the triangle
/// inequality from a pair of boundary flats in a common section. Two chord
/// endpoints are placed in the relative interior of each flat; the triple is
/// pulled toward the diagonal intersection until the chord through A and B
/// also exits through both flats, which forces X' = X and Y' = Y.
template <class F>
EqualityTriple<F> find_equality_triple(const ConvexBody<F>& body,
                                       const FlatPair<F>& flats) {
  const PlaneChart<F>& chart = flats.section;
  auto drop = [&](const Vec<F>& p) {
    return chart.to_chart(ProjectivePoint<F>::from_affine(p)).affine();
  };
  Vec<F> p = drop(flats.first.a), q = drop(flats.first.b);
  Vec<F> r = drop(flats.second.a), s = drop(flats.second.b);

  auto lerp = [](const Vec<F>& m, const Vec<F>& n, const F& t) {
    return vec_axpy(m, t, vec_sub(n, m));
  };
  F third = F(1) / F(3), two_thirds = F(2) / F(3);
  Vec<F> u = lerp(p, q, third), z = lerp(p, q, two_thirds);
  Vec<F> m1 = lerp(r, s, third), m2 = lerp(r, s, two_thirds);

  Vec<F> v, t;
  if (detail::segments_cross(u, m1, z, m2)) {
    v = m1;
    t = m2;
  } else if (detail::segments_cross(u, m2, z, m1)) {
    v = m2;
    t = m1;
  } else {
    fail(ErrorCode::InfeasibleFlats, "flat pair admits no crossing chord placement");
  }

  auto hom = [](const Vec<F>& pt) { return Vec<F>{F(1), pt[0], pt[1]}; };
  Vec<F> c_h = cross3(cross3(hom(u), hom(v)), cross3(hom(z), hom(t)));
  if (is_zero(c_h[0], max_abs(c_h)))
    fail(ErrorCode::InfeasibleFlats, "chord diagonals meet at infinity");
  Vec<F> c{c_h[1] / c_h[0], c_h[2] / c_h[0]};

  Vec<F> c_amb = chart.from_chart_affine(ProjectivePoint<F>(hom(c)));
  F h = F(1) / F(2);
  for (int attempt = 0; attempt < 40; ++attempt, h /= F(2)) {
    Vec<F> a2 = lerp(u, c, h);
    Vec<F> b2 = lerp(t, c, h);
    Vec<F> a_amb = chart.from_chart_affine(ProjectivePoint<F>(hom(a2)));
    Vec<F> b_amb = chart.from_chart_affine(ProjectivePoint<F>(hom(b2)));
    if (classify(body, a_amb) != Region::Interior ||
        classify(body, b_amb) != Region::Interior ||
        classify(body, c_amb) != Region::Interior)
      continue;
    Chord<F> ch;
    try {
      ch = chord(body, a_amb, b_amb);
    } catch (const Error&) {
      continue;
    }
    if (detail::strictly_inside_segment(flats.first.a, flats.first.b, ch.x) &&
        detail::strictly_inside_segment(flats.second.a, flats.second.b, ch.y))
      return {a_amb, c_amb, b_amb};
  }
  fail(ErrorCode::InfeasibleFlats,
       "no placement with chord endpoints interior to both flats");
}

/// Both Hilbert distances of a pair of points interior to nested bodies;
/// the smaller domain yields the larger distance.
template <class F>
std::pair<double, double> compare_nested(const ConvexBody<F>& inner,
                                         const ConvexBody<F>& outer, const Vec<F>& a,
                                         const Vec<F>& b,
                                         const HilbertConfig& cfg = HilbertConfig()) {
  bool nested;
  try {
    nested = is_nested(inner, outer, NestMode::Exact);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedPair) throw;
    nested = is_nested(inner, outer, NestMode::Sampled);
  }
  if (!nested) fail(ErrorCode::NotNested, "inner body is not contained in outer");
  return {hilbert_distance(inner, a, b, cfg), hilbert_distance(outer, a, b, cfg)};
}

}  // namespace projmet
