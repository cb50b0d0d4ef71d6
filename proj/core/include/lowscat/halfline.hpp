#pragma once

#include <functional>
#include <string>
#include <utility>

#include "lowscat/lowenergy.hpp"
#include "lowscat/propagate.hpp"

namespace lowscat {

/// alpha psi(0) + beta psi'(0)/k = 0. Constant coefficients unless `of_k` is set.
struct BoundaryCondition {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
  std::function<std::pair<Complex, Complex>(Complex)> of_k;

  static BoundaryCondition dirichlet() { return {1.0, 0.0, {}}; }
  static BoundaryCondition neumann() { return {0.0, 1.0, {}}; }

  bool constant() const { return !of_k; }
  /// (alpha, beta) at k, scaled so that max(|alpha|, |beta|) = 1.
  std::pair<Complex, Complex> normalized(Complex k = 1.0) const;
};

/// (alpha + i beta)/(alpha - i beta); exactly 1 for beta = 0 and -1 for alpha = 0.
Complex gamma(const BoundaryCondition& bc, Complex k = 1.0);

struct HalfLineProblem {
  PotentialSpec potential;
  BoundaryCondition bc;
};

/// Full-line potential equal to the half-line one for x >= 0 and zero elsewhere.
PotentialSpec extend(const HalfLineProblem& problem);

/// R(k) = (M11 - gamma M12)/(M21 - gamma M22) on the extended potential.
Complex reflection(const HalfLineProblem& problem, Complex k, const OdeTolerances& tol = {},
                   double atol = 1e-12);

/// Series of R in (k ell). Single channel, stored in `rl`.
AmplitudeSeries reflection_series(const HalfLineProblem& problem, const LowEnergyCoefficients& c,
                                  double tau = 1e-8);

struct HalfLineVerdict {
  bool resonant = false;
  std::string criterion;  // "b2" or "b1"
  double margin = 0.0;
};

/// beta = 0 tests |b2| against tau max(1, |a1|, |b1|); beta != 0 tests |b1|
/// as on the full line.
HalfLineVerdict classify_halfline_resonance(const HalfLineProblem& problem,
                                            const LowEnergyCoefficients& c, double tau);

}  // namespace lowscat
