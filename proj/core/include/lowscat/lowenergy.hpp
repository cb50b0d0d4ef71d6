#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lowscat/numerics.hpp"
#include "lowscat/propagate.hpp"
#include "lowscat/zeroenergy.hpp"

namespace lowscat {

/// Exact fraction with int64 numerator/denominator, always reduced, den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct ScdCoefficients {
  Rational s, c, d;
};

/// s_n = (-4)^n/(2n+1)!, c_n = 2(-4)^n/(2n+2)!, d_n = (-4)^n/(2 (2n)!).
/// Valid for 1 <= n <= kMaxScdIndex (int64 range).
ScdCoefficients scd_coefficients(int n);
inline constexpr int kMaxScdIndex = 9;

/// Top rows on the zero-energy grid.
using RowField = std::vector<Row>;

/// D_n, G_n and script-G_n accumulated by recursion_step.
/// d[j] holds D_{j-1}; g[j] and script_g[j] hold G_{j-1}, script-G_{j-1}.
struct RecursionState {
  std::vector<RowField> d;
  std::vector<RowField> g;
  std::vector<RowField> script_g;

  /// Next m that recursion_step accepts.
  int next_m() const { return static_cast<int>(g.size()) - 1; }
};

struct RecursionOutput {
  RowField d_next;    // D_{m+1}
  RowField g;         // G_m
  RowField script_g;  // script-G_m
};

/// Empty state, ready for m = -1 (D_{-1} = 0 is inserted).
RecursionState initial_state(const ZeroEnergyField& field);

/// Performs step m and appends its output to `state`. Throws SequencingError
/// unless m == state.next_m().
RecursionOutput recursion_step(int m, RecursionState& state, const ZeroEnergyField& field);

struct LaurentExpansion {
  int order_min = -1;
  /// coeffs[j] multiplies k^{j-1} in M(k).
  std::vector<Mat2C> coeffs;
  double ell = 1.0;

  const Mat2C& at(int m) const { return coeffs.at(static_cast<std::size_t>(m + 1)); }
  int order_max() const { return static_cast<int>(coeffs.size()) - 2; }
  /// Truncated sum of U^{(m)} k^m for m = -1..upto.
  Mat2C evaluate(Complex k, int upto) const;
};

/// Highest Laurent order reachable with exact s/c/d coefficients.
inline constexpr int kMaxLaurentOrder = 2 * kMaxScdIndex - 2;

LaurentExpansion laurent_expansion(const ZeroEnergyField& field, int m_max);

enum class Branch { generic, resonant };
std::string to_string(Branch b);

/// Power series in (k ell) for Rl, Rr and T.
struct AmplitudeSeries {
  Branch branch = Branch::generic;
  std::vector<Complex> rl, rr, t;
  int truncation_order = 0;
  double ell = 1.0;
  /// Set on the generic branch when 0 < margin < 10 tau.
  bool ill_conditioned = false;
};

struct ResonanceVerdict {
  bool resonant = false;
  double margin = 0.0;
};

/// resonant iff |b1| < tau max(1, |a1|, |b2|); margin = |b1| / scale.
ResonanceVerdict classify_resonance(const LowEnergyCoefficients& c, double tau);

/// Series through (k ell)^order. Generic branch: order <= 3 (Rl, Rr stop at 2).
/// Resonant branch: order <= 1. g1 is required for generic order 3 and for
/// the resonant branch.
AmplitudeSeries amplitude_series(const LowEnergyCoefficients& c, int order, double tau = 1e-8);

/// (1/2 pi i) contour integral of M(k) k^{-m-1} on |k| = radius, trapezoid rule
/// on `nodes` points, for m = m_lo..m_hi. The circle must stay inside the
/// analyticity strip of the spec.
std::vector<Mat2C> cauchy_coefficients(const PotentialSpec& spec, SupportWindow window, int m_lo,
                                       int m_hi, double radius, int nodes,
                                       const OdeTolerances& tol = {});

/// Sums a series in (k ell).
Complex sum_series(const std::vector<Complex>& coeffs, Complex k, double ell);

}  // namespace lowscat
