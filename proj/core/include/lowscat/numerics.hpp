#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lowscat/errors.hpp"

namespace lowscat {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// 2x2 complex matrix. Carrier for H, U, M, M0 and the structural constants.
struct Mat2C {
  Complex m11{}, m12{}, m21{}, m22{};

  static constexpr Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2C zero() { return {}; }

  constexpr Complex det() const { return m11 * m22 - m12 * m21; }
  constexpr Complex trace() const { return m11 + m22; }
  constexpr Mat2C transpose() const { return {m11, m21, m12, m22}; }

  /// Frobenius norm; sub-multiplicative, used for all tolerance checks.
  double norm() const {
    return std::sqrt(std::norm(m11) + std::norm(m12) + std::norm(m21) + std::norm(m22));
  }
  double max_abs() const {
    return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
  }
  bool finite() const;

  constexpr Mat2C& operator+=(const Mat2C& o) {
    m11 += o.m11; m12 += o.m12; m21 += o.m21; m22 += o.m22;
    return *this;
  }
  constexpr Mat2C& operator-=(const Mat2C& o) {
    m11 -= o.m11; m12 -= o.m12; m21 -= o.m21; m22 -= o.m22;
    return *this;
  }
  constexpr Mat2C& operator*=(Complex s) {
    m11 *= s; m12 *= s; m21 *= s; m22 *= s;
    return *this;
  }
  friend constexpr bool operator==(const Mat2C&, const Mat2C&) = default;
};

constexpr Mat2C operator+(Mat2C a, const Mat2C& b) { return a += b; }
constexpr Mat2C operator-(Mat2C a, const Mat2C& b) { return a -= b; }
constexpr Mat2C operator-(const Mat2C& a) { return {-a.m11, -a.m12, -a.m21, -a.m22}; }
constexpr Mat2C operator*(Mat2C a, Complex s) { return a *= s; }
constexpr Mat2C operator*(Complex s, Mat2C a) { return a *= s; }
constexpr Mat2C operator*(double s, Mat2C a) { return a *= Complex(s); }

constexpr Mat2C operator*(const Mat2C& a, const Mat2C& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

inline Mat2C mat_mul(const Mat2C& a, const Mat2C& b) { return a * b; }
inline Complex mat_det(const Mat2C& a) { return a.det(); }

/// Top row of a 2x2 matrix whose second row vanishes.
struct Row {
  Complex c1{}, c2{};

  constexpr Row& operator+=(const Row& o) { c1 += o.c1; c2 += o.c2; return *this; }
  constexpr Row& operator-=(const Row& o) { c1 -= o.c1; c2 -= o.c2; return *this; }
  constexpr Row& operator*=(Complex s) { c1 *= s; c2 *= s; return *this; }
  double max_abs() const { return std::max(std::abs(c1), std::abs(c2)); }
  constexpr Mat2C as_matrix() const { return {c1, c2, 0.0, 0.0}; }
  friend constexpr bool operator==(const Row&, const Row&) = default;
};

constexpr Row operator+(Row a, const Row& b) { return a += b; }
constexpr Row operator-(Row a, const Row& b) { return a -= b; }
constexpr Row operator*(Row a, Complex s) { return a *= s; }
constexpr Row operator*(Complex s, Row a) { return a *= s; }
constexpr Row operator*(double s, Row a) { return a *= Complex(s); }

/// Pauli matrices and the nilpotent/projector constants of the dynamical formulation.
struct StructuralConstants {
  Mat2C I, sigma1, sigma2, sigma3;
  Mat2C K;      // sigma3 + i sigma2 = [[1,1],[-1,-1]]
  Mat2C KT;     // transpose of K
  Mat2C Gamma;  // [[1,-1],[0,0]]
  Mat2C Delta;  // [[1,1],[0,0]]
};

StructuralConstants structural_constants();

inline constexpr Row kGammaRow{1.0, -1.0};
inline constexpr Row kDeltaRow{1.0, 1.0};

/// Sampled function on strictly increasing nodes.
struct Grid {
  std::vector<double> nodes;
  std::vector<Complex> values;

  /// Throws InvalidInput unless nodes are strictly increasing and sizes agree.
  void validate() const;
};

struct QuadResult {
  Complex value;
  double error_estimate = 0.0;
};

/// Composite quadrature of sampled data. Runs of equally spaced nodes are
/// integrated by trapezoid plus one Richardson level (Simpson); isolated
/// non-uniform intervals fall back to the trapezoid rule.
QuadResult quad(const Grid& grid);

/// Running integral from nodes[0] to every node. Fourth order on uniformly
/// spaced runs (local cubic interpolation), trapezoid elsewhere.
std::vector<Complex> cumulative_quad(const Grid& grid);

/// Weights w such that the integral over [x_i, x_{i+1}] of a function sampled
/// on a uniform run is sum_j w_j f_{i+j-1} (j = 0..3). Exposed for the
/// generic cumulative integrator used by the engines.
struct IntervalStencil {
  int offset;       // index of the first sample relative to the interval start
  double w[4];      // multiply by h
  int count;
};
IntervalStencil interval_stencil(std::size_t interval, std::size_t n_intervals);

/// Generic running integral on one uniform run of `values` with spacing h,
/// written into out[0..n]. out[0] = start.
template <class T>
void cumulative_uniform(std::span<const T> values, double h, T start, std::span<T> out) {
  const std::size_t n = values.size() - 1;
  out[0] = start;
  for (std::size_t i = 0; i < n; ++i) {
    const IntervalStencil st = interval_stencil(i, n);
    T acc = values[static_cast<std::size_t>(static_cast<long>(i) + st.offset)] * Complex(st.w[0]);
    for (int j = 1; j < st.count; ++j) {
      acc += values[static_cast<std::size_t>(static_cast<long>(i) + st.offset + j)] *
             Complex(st.w[j]);
    }
    out[i + 1] = out[i] + acc * Complex(h);
  }
}

struct OdeTolerances {
  double rtol = 1e-10;
  double atol = 1e-12;
};

struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

namespace detail {
double ode_error_norm(const Mat2C& err, const Mat2C& y0, const Mat2C& y1, const OdeTolerances& tol);
}

/// Solves i dU/dx = rhs(x) U from x0 to x1 with U(x0) = u0 using the
/// Dormand-Prince 5(4) embedded pair with adaptive step control.
/// `rhs` must be continuous on [x0, x1]; delta contributions are composed by
/// the caller. x1 < x0 is allowed (backward integration).
template <class Rhs>
Mat2C integrate_linear_ode(Rhs&& rhs, double x0, double x1, Mat2C u0, const OdeTolerances& tol,
                           OdeStats* stats = nullptr) {
  if (!(tol.rtol > 0.0) || !(tol.atol > 0.0)) throw InvalidInput("ODE tolerances must be positive");
  if (x0 == x1) return u0;

  // Dormand-Prince coefficients.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  // dU/dx = -i rhs(x) U
  auto f = [&](double x, const Mat2C& u) { return (-kI) * (rhs(x) * u); };

  const double span = x1 - x0;
  const double dir = span > 0 ? 1.0 : -1.0;
  double x = x0;
  Mat2C y = u0;
  double h = span;  // try the whole interval first
  Mat2C k1 = f(x, y);
  const double h_min = 1e-14 * std::max({std::abs(x0), std::abs(x1), std::abs(span)});

  while ((x1 - x) * dir > 0.0) {
    if (std::abs(h) > std::abs(x1 - x)) h = x1 - x;
    if (std::abs(h) < h_min) throw IntegrationFailure(x, "step size underflow in linear ODE");

    const Mat2C k2 = f(x + c2 * h, y + Complex(h * a21) * k1);
    const Mat2C k3 = f(x + c3 * h, y + Complex(h) * (Complex(a31) * k1 + Complex(a32) * k2));
    const Mat2C k4 = f(x + c4 * h, y + Complex(h) * (Complex(a41) * k1 + Complex(a42) * k2 +
                                                     Complex(a43) * k3));
    const Mat2C k5 = f(x + c5 * h, y + Complex(h) * (Complex(a51) * k1 + Complex(a52) * k2 +
                                                     Complex(a53) * k3 + Complex(a54) * k4));
    const double xe = (std::abs(x1 - (x + h)) < h_min) ? x1 : x + h;
    const Mat2C k6 = f(xe, y + Complex(h) * (Complex(a61) * k1 + Complex(a62) * k2 +
                                             Complex(a63) * k3 + Complex(a64) * k4 +
                                             Complex(a65) * k5));
    const Mat2C ynew = y + Complex(h) * (Complex(b1) * k1 + Complex(b3) * k3 + Complex(b4) * k4 +
                                         Complex(b5) * k5 + Complex(b6) * k6);
    const Mat2C k7 = f(xe, ynew);
    const Mat2C err = Complex(h) * (Complex(e1) * k1 + Complex(e3) * k3 + Complex(e4) * k4 +
                                    Complex(e5) * k5 + Complex(e6) * k6 + Complex(e7) * k7);
    const double en = detail::ode_error_norm(err, y, ynew, tol);
    if (!std::isfinite(en)) throw IntegrationFailure(x, "non-finite state in linear ODE");

    if (en <= 1.0) {
      x = xe;
      y = ynew;
      k1 = k7;  // FSAL
      if (stats) ++stats->accepted;
      const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      if (stats) ++stats->rejected;
      h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
    }
  }
  return y;
}

}  // namespace lowscat
