#pragma once

#include <string>
#include <vector>

#include "projmet/hilbert.hpp"

namespace projmet::svg {

/// Minimal deterministic SVG 1.1 writer. The viewBox is the figure's data
/// box with a 5% margin; the y axis is flipped to the mathematical
/// orientation when coordinates are mapped.
class Figure {
 public:
  Figure(double min_x, double min_y, double max_x, double max_y);

  void add_polygon(const std::vector<Vec<double>>& pts, const std::string& stroke,
                   double width, bool closed = true);
  void add_segment(const Vec<double>& p, const Vec<double>& q,
                   const std::string& stroke, double width,
                   const std::string& dash = "");
  void add_point(const Vec<double>& p, const std::string& label);

  std::string str() const;

 private:
  double flip(double y) const { return min_y_ + max_y_ - y; }

  double min_x_, min_y_, max_x_, max_y_;
  double unit_;  // stroke/marker unit derived from the box size
  std::string elements_;
};

/// The perspective construction figure: body boundary, the three chords,
/// the dashed perspective triangle through W, and the labeled points
/// U, V, Z, T, X, Y, W, X', Y', D (plus A, B, C). 2D bodies only.
std::string triangle_figure(const ConvexBody<double>& body,
                            const TriangleCertificate<double>& cert);

}  // namespace projmet::svg
