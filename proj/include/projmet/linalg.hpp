#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "projmet/error.hpp"
#include "projmet/numeric.hpp"

namespace projmet {

/// Dense vector over the scalar field F. Used for both affine points and
/// homogeneous coordinate tuples; the context fixes the interpretation.
template <class F>
using Vec = std::vector<F>;

/// Row-major dense matrix.
template <class F>
using Mat = std::vector<std::vector<F>>;

template <class F>
Vec<F> vec_add(const Vec<F>& a, const Vec<F>& b) {
  Vec<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class F>
Vec<F> vec_sub(const Vec<F>& a, const Vec<F>& b) {
  Vec<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class F>
Vec<F> vec_scale(const F& s, const Vec<F>& a) {
  Vec<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

/// a + s*b
template <class F>
Vec<F> vec_axpy(const Vec<F>& a, const F& s, const Vec<F>& b) {
  Vec<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
  return r;
}

template <class F>
F dot(const Vec<F>& a, const Vec<F>& b) {
  F s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class F>
double max_abs(const Vec<F>& a) {
  double m = 0.0;
  for (const F& v : a) m = std::max(m, magnitude(v));
  return m;
}

template <class F>
bool vec_is_zero(const Vec<F>& a, double scale = 1.0) {
  for (const F& v : a)
    if (!is_zero(v, scale)) return false;
  return true;
}

/// Cross product of 3-component vectors; the line/meet workhorse of the
/// planar homogeneous constructions.
template <class F>
Vec<F> cross3(const Vec<F>& a, const Vec<F>& b) {
  return Vec<F>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0]};
}

template <class F>
F det2(const F& a, const F& b, const F& c, const F& d) {
  return a * d - b * c;
}

template <class F>
F det3(const Mat<F>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Determinant by Gaussian elimination with magnitude pivoting. Exact for
/// rational scalars, standard partial pivoting for floats.
template <class F>
F det(Mat<F> m) {
  const std::size_t n = m.size();
  F result(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = magnitude(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double mag = magnitude(m[r][col]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if constexpr (num_traits<F>::is_exact) {
      if (m[pivot][col] == F(0)) {
        pivot = col;
        while (pivot < n && m[pivot][col] == F(0)) ++pivot;
        if (pivot == n) return F(0);
      }
    } else {
      if (best == 0.0) return F(0);
    }
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      result = -result;
    }
    result *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == F(0)) continue;
      F factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return result;
}

template <class F>
Vec<F> mat_vec(const Mat<F>& m, const Vec<F>& v) {
  Vec<F> r(m.size(), F(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

template <class F>
Mat<F> mat_mul(const Mat<F>& a, const Mat<F>& b) {
  const std::size_t n = a.size(), k = b.size(), m = b[0].size();
  Mat<F> r(n, Vec<F>(m, F(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
  return r;
}

template <class F>
Mat<F> identity_matrix(std::size_t n) {
  Mat<F> m(n, Vec<F>(n, F(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = F(1);
  return m;
}

/// Solves m*x = rhs by Gauss-Jordan. Throws DegenerateInput on a singular
/// system (exactly singular in rational mode, pivot below tolerance in float).
template <class F>
Vec<F> solve_linear(Mat<F> m, Vec<F> rhs) {
  const std::size_t n = m.size();
  double scale = 1.0;
  for (const auto& row : m) scale = std::max(scale, max_abs(row));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = magnitude(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double mag = magnitude(m[r][col]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if constexpr (num_traits<F>::is_exact) {
      if (m[pivot][col] == F(0)) {
        pivot = col;
        while (pivot < n && m[pivot][col] == F(0)) ++pivot;
        if (pivot == n) fail(ErrorCode::DegenerateInput, "singular linear system");
      }
    } else {
      if (best <= tol::kDegenerate * scale)
        fail(ErrorCode::DegenerateInput, "singular linear system");
    }
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      std::swap(rhs[pivot], rhs[col]);
    }
    F inv_p = F(1) / m[col][col];
    for (std::size_t c = col; c < n; ++c) m[col][c] *= inv_p;
    rhs[col] *= inv_p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == F(0)) continue;
      F factor = m[r][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  return rhs;
}

template <class F>
Mat<F> mat_inverse(const Mat<F>& m) {
  const std::size_t n = m.size();
  Mat<F> inv(n, Vec<F>(n));
  for (std::size_t j = 0; j < n; ++j) {
    Vec<F> e(n, F(0));
    e[j] = F(1);
    Vec<F> col = solve_linear(m, e);
    for (std::size_t i = 0; i < n; ++i) inv[i][j] = col[i];
  }
  return inv;
}

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
/// Plenty for the 3x3/4x4 quadrics and shape matrices handled here.
inline std::vector<double> symmetric_eigenvalues(Mat<double> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-28) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

/// Inertia (n_neg, n_zero, n_pos) of a symmetric matrix, with eigenvalues
/// below rel_tol * spectral scale counted as zero.
inline std::array<int, 3> symmetric_inertia(const Mat<double>& a,
                                            double rel_tol = 1e-10) {
  auto eig = symmetric_eigenvalues(a);
  double scale = 0.0;
  for (double e : eig) scale = std::max(scale, std::fabs(e));
  std::array<int, 3> inertia{0, 0, 0};
  for (double e : eig) {
    if (std::fabs(e) <= rel_tol * std::max(scale, 1e-300))
      ++inertia[1];
    else if (e < 0)
      ++inertia[0];
    else
      ++inertia[2];
  }
  return inertia;
}

}  // namespace projmet
