#include "projmet/svg.hpp"

#include <cstdio>

namespace projmet::svg {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

Figure::Figure(double min_x, double min_y, double max_x, double max_y) {
  double mx = 0.05 * (max_x - min_x);
  double my = 0.05 * (max_y - min_y);
  min_x_ = min_x - mx;
  max_x_ = max_x + mx;
  min_y_ = min_y - my;
  max_y_ = max_y + my;
  unit_ = 0.01 * std::max(max_x_ - min_x_, max_y_ - min_y_);
}

void Figure::add_polygon(const std::vector<Vec<double>>& pts, const std::string& stroke,
                         double width, bool closed) {
  elements_ += closed ? "<polygon points=\"" : "<polyline points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) elements_ += ' ';
    elements_ += fmt(pts[i][0]) + "," + fmt(flip(pts[i][1]));
  }
  elements_ += "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
               fmt(width * unit_) + "\"/>\n";
}

void Figure::add_segment(const Vec<double>& p, const Vec<double>& q,
                         const std::string& stroke, double width,
                         const std::string& dash) {
  elements_ += "<line x1=\"" + fmt(p[0]) + "\" y1=\"" + fmt(flip(p[1])) + "\" x2=\"" +
               fmt(q[0]) + "\" y2=\"" + fmt(flip(q[1])) + "\" stroke=\"" + stroke +
               "\" stroke-width=\"" + fmt(width * unit_) + "\"";
  if (!dash.empty()) elements_ += " stroke-dasharray=\"" + dash + "\"";
  elements_ += "/>\n";
}

void Figure::add_point(const Vec<double>& p, const std::string& label) {
  elements_ += "<circle cx=\"" + fmt(p[0]) + "\" cy=\"" + fmt(flip(p[1])) +
               "\" r=\"" + fmt(0.6 * unit_) + "\" fill=\"black\"/>\n";
  elements_ += "<text x=\"" + fmt(p[0] + 1.2 * unit_) + "\" y=\"" +
               fmt(flip(p[1]) - 1.2 * unit_) + "\" font-size=\"" + fmt(3.5 * unit_) +
               "\" font-family=\"serif\">" + label + "</text>\n";
}

std::string Figure::str() const {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
  out += fmt(min_x_) + " " + fmt(min_y_) + " " + fmt(max_x_ - min_x_) + " " +
         fmt(max_y_ - min_y_) + "\">\n";
  out += elements_;
  out += "</svg>\n";
  return out;
}

namespace {

std::vector<Vec<double>> boundary_polyline(const ConvexBody<double>& body) {
  if (body.is_polytope()) return body.polytope().vertices();
  if (std::holds_alternative<Ellipsoid>(body.rep())) {
    const auto& e = std::get<Ellipsoid>(body.rep());
    // Boundary points c + L^{-T} (cos t, sin t) from the Cholesky factor of
    // the shape matrix.
    const auto& s = e.shape();
    double l11 = std::sqrt(s[0][0]);
    double l21 = s[0][1] / l11;
    double l22 = std::sqrt(s[1][1] - l21 * l21);
    std::vector<Vec<double>> pts;
    const int kSegments = 128;
    for (int i = 0; i < kSegments; ++i) {
      double t = 2.0 * M_PI * i / kSegments;
      double u1 = std::cos(t), u2 = std::sin(t);
      // Solve L^T w = u for the upper-triangular factor.
      double w2 = u2 / l22;
      double w1 = (u1 - l21 * w2) / l11;
      pts.push_back({e.center()[0] + w1, e.center()[1] + w2});
    }
    return pts;
  }
  fail(ErrorCode::UnsupportedPair, "oracle bodies are not drawable");
}

}  // namespace

std::string triangle_figure(const ConvexBody<double>& body,
                            const TriangleCertificate<double>& cert) {
  if (body.dim() != 2)
    fail(ErrorCode::DimensionMismatch, "the construction figure is planar");
  auto [lo, hi] = body.bounding_box();
  Figure fig(lo[0], lo[1], hi[0], hi[1]);

  fig.add_polygon(boundary_polyline(body), "black", 0.35);
  fig.add_segment(cert.u, cert.v, "black", 0.25);
  fig.add_segment(cert.z, cert.t, "black", 0.25);
  fig.add_segment(cert.x, cert.y, "black", 0.25);

  const bool w_finite = !cert.w.is_ideal();
  auto affine2 = [](const ProjectivePoint<double>& p) { return p.affine(); };
  if (w_finite) {
    Vec<double> w = affine2(cert.w);
    fig.add_segment(cert.u, w, "gray", 0.18, "3 3");
    fig.add_segment(cert.t, w, "gray", 0.18, "3 3");
    fig.add_segment(cert.u, cert.t, "gray", 0.18, "3 3");
    if (!cert.d.is_ideal())
      fig.add_segment(w, affine2(cert.d), "gray", 0.18, "1 2");
    fig.add_point(w, "W");
  } else {
    // Ideal perspective center: the dashed carriers UZ and VT are parallel.
    if (!cert.xp.is_ideal()) fig.add_segment(cert.u, affine2(cert.xp), "gray", 0.18, "3 3");
    if (!cert.yp.is_ideal()) fig.add_segment(cert.t, affine2(cert.yp), "gray", 0.18, "3 3");
    fig.add_point(vec_scale(0.5, vec_add(cert.u, cert.t)), "W at infinity");
  }

  fig.add_point(cert.a, "A");
  fig.add_point(cert.b, "B");
  fig.add_point(cert.c, "C");
  fig.add_point(cert.u, "U");
  fig.add_point(cert.v, "V");
  fig.add_point(cert.z, "Z");
  fig.add_point(cert.t, "T");
  fig.add_point(cert.x, "X");
  fig.add_point(cert.y, "Y");
  if (!cert.xp.is_ideal()) fig.add_point(affine2(cert.xp), "X'");
  if (!cert.yp.is_ideal()) fig.add_point(affine2(cert.yp), "Y'");
  if (!cert.d.is_ideal()) fig.add_point(affine2(cert.d), "D");
  return fig.str();
}

}  // namespace projmet::svg
