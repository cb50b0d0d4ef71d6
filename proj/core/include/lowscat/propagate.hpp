#pragma once

#include <vector>

#include "lowscat/numerics.hpp"
#include "lowscat/potential.hpp"

namespace lowscat {

struct TransferMatrix {
  Complex k;
  Mat2C m;
};

/// Left/right reflection and transmission amplitudes at wavenumber k.
struct Amplitudes {
  Complex Rl, Rr, T;
  Complex k;
};

/// e^{-ikx sigma3} K e^{ikx sigma3} = [[1, e^{-2ikx}], [-e^{2ikx}, -1]].
Mat2C rotated_k(double x, Complex k);

/// H(x;k) = v(x)/(2k) rotated_k(x, k) for the smooth part of the potential.
/// Throws PoleError at k = 0.
Mat2C hamiltonian(const PotentialSpec& spec, double x, Complex k);

/// Exact evolution across z delta(x - center): I - (i z / 2k) rotated_k(center, k).
Mat2C delta_jump(Complex strength, double center, Complex k);

/// U(x_to, x_from; k) for x_from < x_to, composed from ODE segments between
/// breakpoints and exact delta jumps (deltas on the closed interval count).
Mat2C evolution(const PotentialSpec& spec, Complex k, double x_from, double x_to,
                const OdeTolerances& tol = {});

/// M(k) = U(x_plus, x_minus; k). Complex k must satisfy Im k > -mu when the
/// spec carries tail metadata.
TransferMatrix transfer_matrix(const PotentialSpec& spec, Complex k, SupportWindow window,
                               const OdeTolerances& tol = {});

/// Rl = -M21/M22, Rr = M12/M22, T = 1/M22. Throws SpectralSingularity when
/// |M22| <= atol.
Amplitudes amplitudes(const TransferMatrix& tm, double atol = 1e-12);

struct DysonResult {
  TransferMatrix tm;
  /// (I_H)^{N+1}/(N+1)! exp(I_H) with I_H the integral of ||H||_F.
  double remainder_bound = 0.0;
  double h_norm_integral = 0.0;
  /// Frobenius norm of the n-th order term at x_plus, n = 0..order.
  std::vector<double> term_norms;
  /// Sum through order n, n = 0..order.
  std::vector<Mat2C> partial_sums;
};

/// Partial Dyson sum of M(k) through `order`, each order obtained as one
/// running integral of the previous order on a shared node grid.
DysonResult dyson_transfer(const PotentialSpec& spec, Complex k, SupportWindow window, int order,
                           const GridOptions& grid = {});

/// |k| * width below this suggests the low-energy expansion instead.
inline constexpr double kSmallKThreshold = 1e-3;
inline bool small_k(Complex k, SupportWindow w) { return std::abs(k) * w.width() < kSmallKThreshold; }

}  // namespace lowscat
