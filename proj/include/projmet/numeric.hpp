#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace projmet {

/// Exact rational scalar used by the synthetic constructions and predicates.
/// Expression templates are disabled so arithmetic composes with the generic
/// geometry templates.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

using Complex = std::complex<double>;

namespace tol {
// Scale-relative collinearity test: max 3x3 minor <= kCollinear * entry scale.
inline constexpr double kCollinear = 1e-9;
// Oracle-body chord bisection, relative to the body diameter.
inline constexpr double kOracleChord = 1e-12;
// Near-boundary guard on chords: min(|XA|,|BY|) below this fraction of the
// chord length raises NumericallyUnstable instead of returning a huge value.
inline constexpr double kBoundaryGuard = 1e-13;
// Equality detection on distances in float mode.
inline constexpr double kEquality = 1e-9;
// Dedup hash tolerance for section-plane candidates.
inline constexpr double kPlaneDedup = 1e-9;
// Generic degeneracy cutoff for float intersections and pivots.
inline constexpr double kDegenerate = 1e-12;
}  // namespace tol

inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(const Complex& v) { return std::abs(v); }
inline double magnitude(const Rational& v) {
  return std::fabs(v.template convert_to<double>());
}

template <class F>
struct num_traits;

template <>
struct num_traits<double> {
  static constexpr bool is_exact = false;
  static double to_double(double v) { return v; }
  static double from_double(double v) { return v; }
};

template <>
struct num_traits<Rational> {
  static constexpr bool is_exact = true;
  static double to_double(const Rational& v) {
    return v.template convert_to<double>();
  }
  // Doubles are dyadic rationals, so this conversion is exact.
  static Rational from_double(double v) { return Rational(v); }
};

template <>
struct num_traits<Complex> {
  static constexpr bool is_exact = false;
  static double to_double(const Complex& v) { return v.real(); }
  static Complex from_double(double v) { return Complex(v, 0.0); }
};

/// True if v should be treated as zero at the given entry scale.
template <class F>
bool is_zero(const F& v, double scale = 1.0, double rel_tol = tol::kDegenerate) {
  if constexpr (num_traits<F>::is_exact) {
    (void)scale;
    (void)rel_tol;
    return v == F(0);
  } else {
    return magnitude(v) <= rel_tol * (scale < 1.0 ? 1.0 : scale);
  }
}

template <class F>
int sign_of(const F& v) {
  if (v > F(0)) return 1;
  if (v < F(0)) return -1;
  return 0;
}

/// Parses "p/q", plain integers, or decimal literals into an exact rational.
Rational parse_rational(const std::string& text);

std::string rational_to_string(const Rational& v);

}  // namespace projmet
