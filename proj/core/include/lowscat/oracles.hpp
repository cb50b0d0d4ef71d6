#pragma once

#include "lowscat/lowenergy.hpp"
#include "lowscat/numerics.hpp"
#include "lowscat/zeroenergy.hpp"

namespace lowscat {

/// v = z on [a, a + L], zero elsewhere.
struct BarrierParams {
  Complex z;
  double a = 0.0;
  double L = 1.0;
  double ell = 1.0;
};

/// v = z delta(x - a), z = e^{i zeta}/ell.
struct DeltaParams {
  Complex z;
  double a = 0.0;

  static DeltaParams from_phase(double zeta, double a_hat, double ell);
  double ell() const { return 1.0 / std::abs(z); }
  double zeta() const { return std::arg(z); }
  double a_hat() const { return a / ell(); }
};

/// cosh(sqrt w) and sinh(sqrt w)/sqrt w, even in sqrt w, Maclaurin near 0.
Complex cosh_sqrt(Complex w);
Complex sinhc_sqrt(Complex w);

Mat2C barrier_transfer(const BarrierParams& p, Complex k);
LowEnergyCoefficients barrier_lowk(const BarrierParams& p);

struct DeltaClosedForms {
  Mat2C transfer;
  Mat2C m0;
  LowEnergyCoefficients coeffs;
  AmplitudeSeries series;
  /// Half-line reflection at k for a given gamma.
  Complex halfline_reflection(Complex k, Complex gamma) const;
  DeltaParams params;
};

/// Closed forms for the delta potential with ell = 1/|z|. `order` caps the
/// T series (<= 3) and the R series (<= 2).
DeltaClosedForms delta_all(const DeltaParams& p, Complex k, int order = 3);

}  // namespace lowscat
