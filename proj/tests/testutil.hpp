#pragma once

#include <random>

#include "projmet/convex.hpp"

namespace projmet::testing {

inline std::mt19937_64 make_rng(unsigned long seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Rational random_rational(std::mt19937_64& rng, long lo_num, long hi_num,
                                long max_den = 64) {
  std::uniform_int_distribution<long> den(1, max_den);
  long d = den(rng);
  std::uniform_int_distribution<long> num(lo_num * d, hi_num * d);
  return Rational(num(rng), d);
}

/// Independent cross-ratio oracle: line coordinates along the dominant axis,
/// then the textbook formula on those scalars. No homogeneous brackets.
template <class F>
F affine_cross_ratio_oracle(const Vec<F>& p0, const Vec<F>& p1, const Vec<F>& p2,
                            const Vec<F>& p3) {
  Vec<F> dir = vec_sub(p1, p0);
  std::size_t axis = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < dir.size(); ++i)
    if (magnitude(dir[i]) > best) {
      best = magnitude(dir[i]);
      axis = i;
    }
  F x = p0[axis], y = p1[axis], z = p2[axis], t = p3[axis];
  return (x - z) / (x - t) * ((y - t) / (y - z));
}

/// Closed-form hyperbolic distance of the Klein unit-ball model at scale
/// 1/2: arccosh((1 - <u,v>) / sqrt((1-|u|^2)(1-|v|^2))).
inline double klein_distance(const Vec<double>& u, const Vec<double>& v) {
  double uu = dot(u, u), vv = dot(v, v), uv = dot(u, v);
  double arg = (1.0 - uv) / std::sqrt((1.0 - uu) * (1.0 - vv));
  return std::acosh(std::max(1.0, arg));
}

/// Random interior point by rejection sampling in the bounding box, with a
/// small margin away from the boundary.
template <class F>
Vec<F> random_interior_point(const ConvexBody<F>& body, std::mt19937_64& rng,
                             double margin_frac = 1e-6) {
  auto [lo, hi] = body.bounding_box();
  const int n = body.dim();
  const double eps = margin_frac * body.diameter();
  for (int tries = 0; tries < 100000; ++tries) {
    Vec<F> p(n);
    for (int i = 0; i < n; ++i) {
      if constexpr (num_traits<F>::is_exact) {
        Rational t = random_rational(rng, 0, 1, 512);
        p[i] = num_traits<F>::from_double(lo[i]) +
               t * (num_traits<F>::from_double(hi[i]) -
                    num_traits<F>::from_double(lo[i]));
      } else {
        p[i] = uniform(rng, lo[i], hi[i]);
      }
    }
    if (classify(body, p, eps) == Region::Interior) return p;
  }
  fail(ErrorCode::EmptyInterior, "interior sampling failed");
}

inline ConvexBody<double> unit_disk() {
  return ConvexBody<double>(Ellipsoid::ball({0.0, 0.0}, 1.0));
}

inline ConvexBody<double> unit_ball3() {
  return ConvexBody<double>(Ellipsoid::ball({0.0, 0.0, 0.0}, 1.0));
}

template <class F>
ConvexBody<F> square_body(double half = 1.0) {
  F h = num_traits<F>::from_double(half);
  return ConvexBody<F>(Polytope<F>::from_vertices(
      {{-h, -h}, {h, -h}, {h, h}, {-h, h}}));
}

template <class F>
ConvexBody<F> triangle_body() {
  F z(0), four(4);
  return ConvexBody<F>(Polytope<F>::from_vertices({{z, z}, {four, z}, {z, four}}));
}

template <class F>
ConvexBody<F> tetrahedron_body() {
  F z(0), four(4);
  return ConvexBody<F>(
      Polytope<F>::from_vertices({{z, z, z}, {four, z, z}, {z, four, z}, {z, z, four}}));
}

inline ConvexBody<double> random_octagon(unsigned long seed) {
  auto rng = make_rng(seed);
  std::vector<double> angles;
  for (int i = 0; i < 8; ++i)
    angles.push_back(2.0 * M_PI * i / 8.0 + uniform(rng, -0.25, 0.25));
  std::vector<Vec<double>> verts;
  for (double th : angles) {
    double r = uniform(rng, 0.8, 1.4);
    verts.push_back({r * std::cos(th), r * std::sin(th)});
  }
  return ConvexBody<double>(Polytope<double>::from_vertices(std::move(verts)));
}

/// Random well-conditioned collineation: entries in [-2, 2], resampled until
/// the determinant is comfortably away from zero.
template <class F>
Collineation<F> random_collineation(int dim, std::mt19937_64& rng) {
  for (;;) {
    Mat<double> m(dim + 1, Vec<double>(dim + 1));
    for (auto& row : m)
      for (auto& e : row) e = uniform(rng, -2.0, 2.0);
    if (std::fabs(det(m)) < 0.3) continue;
    if constexpr (num_traits<F>::is_exact) {
      Mat<F> mr(m.size(), Vec<F>(m.size()));
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
          mr[i][j] = num_traits<F>::from_double(std::round(m[i][j] * 16) / 16.0);
      if (det(mr) == F(0)) continue;
      return Collineation<F>(std::move(mr));
    } else {
      return Collineation<F>(std::move(m));
    }
  }
}

}  // namespace projmet::testing
