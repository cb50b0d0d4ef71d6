#pragma once

#include <optional>
#include <vector>

#include "lowscat/numerics.hpp"
#include "lowscat/potential.hpp"

namespace lowscat {

/// a_j, b_j and g1 of the zero-energy solutions; all dimensionless.
struct LowEnergyCoefficients {
  Complex a1, a2, b1, b2;
  std::optional<Complex> g1;
  double ell = 1.0;

  /// a1 b2 - a2 b1, equal to 1 for exact data.
  Complex wronskian() const { return a1 * b2 - a2 * b1; }
};

struct ZeroTransferMatrix {
  Mat2C m0;
};

struct PhiValues {
  Complex phi1, dphi1, phi2, dphi2;
};

/// phi_1, phi_2 and their derivatives on the partition nodes of a window.
/// At delta centres both one-sided limits are stored (duplicated node).
class ZeroEnergyField {
 public:
  ZeroEnergyField(Partition part, std::vector<PhiValues> values, OdeTolerances tol);

  const Partition& partition() const { return part_; }
  const PotentialSpec& spec() const { return part_.spec(); }
  SupportWindow window() const { return part_.window(); }
  double ell() const { return part_.spec().ell; }
  const std::vector<double>& x() const { return part_.x(); }
  const std::vector<PhiValues>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const OdeTolerances& tolerances() const { return tol_; }

  /// Values at an arbitrary x. Left limit at delta centres; affine
  /// continuation outside the window.
  PhiValues at(double x) const;

  /// max over nodes of |ell (phi1 phi2' - phi1' phi2) - 1|.
  double wronskian_residual() const;

 private:
  Partition part_;
  std::vector<PhiValues> values_;
  OdeTolerances tol_;
};

/// Integrates -phi'' + v phi = 0 from x_minus with phi1 = 1, phi1' = 0,
/// phi2 = x_minus/ell, phi2' = 1/ell. Delta terms: phi' += z phi(a).
ZeroEnergyField solve_phi(const PotentialSpec& spec, SupportWindow window,
                          const OdeTolerances& tol = {}, const GridOptions& grid = {});

/// a_j = phi_j - x_plus phi_j', b_j = ell phi_j' at x_plus. g1 left unset.
LowEnergyCoefficients coefficients(const ZeroEnergyField& field);

/// coefficients() plus g1.
LowEnergyCoefficients full_coefficients(const ZeroEnergyField& field);

/// ell [phi1(x) phi2(xt) - phi2(x) phi1(xt)] / phi1(x_minus)
Complex green(const ZeroEnergyField& field, double x, double xt);
/// Derivative of green() in its first argument.
Complex green_dx(const ZeroEnergyField& field, double x, double xt);

/// varsigma at every node of the field.
std::vector<Complex> varsigma_grid(const ZeroEnergyField& field);
Complex varsigma(const ZeroEnergyField& field, double x);

Complex g1_coefficient(const ZeroEnergyField& field);

/// M0 = [[a1, a2], [b1, b2]].
ZeroTransferMatrix m0_ode(const ZeroEnergyField& field);

struct ZeroDysonResult {
  ZeroTransferMatrix m0;
  /// Frobenius norm of the n-th order term at x_plus, n = 0..order.
  std::vector<double> term_norms;
  /// Sum through order n, n = 0..order.
  std::vector<Mat2C> partial_sums;
};

/// Partial Dyson sum of U0(x_plus, x_minus) in the (phi - x phi', ell phi')
/// basis, where the n-th term carries v(x_n) prod (x_{j+1} - x_j) v(x_j).
ZeroDysonResult m0_dyson(const PotentialSpec& spec, SupportWindow window, int order,
                         const GridOptions& grid = {});

struct PhiFromU0 {
  Complex phi1, phi2, phi1_minus_x_dphi1;
};

/// phi1 = U0_11 + x U0_21 / ell, phi2 = U0_12 + x U0_22 / ell, with U0(x, x_minus)
/// summed through `order`.
PhiFromU0 phi_from_u0(const PotentialSpec& spec, SupportWindow window, double x, int order,
                      const GridOptions& grid = {});

}  // namespace lowscat
