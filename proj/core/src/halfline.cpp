#include "lowscat/halfline.hpp"

#include <algorithm>

namespace lowscat {

namespace {

void require_constant(const BoundaryCondition& bc) {
  if (!bc.constant())
    throw UnsupportedConfiguration("low-energy series need constant alpha and beta");
}

}  // namespace

std::pair<Complex, Complex> BoundaryCondition::normalized(Complex k) const {
  auto [a, b] = of_k ? of_k(k) : std::pair<Complex, Complex>{alpha, beta};
  const double s = std::max(std::abs(a), std::abs(b));
  if (!(s > 0.0)) throw InvalidInput("boundary condition needs |alpha| + |beta| > 0");
  return {a / s, b / s};
}

Complex gamma(const BoundaryCondition& bc, Complex k) {
  const auto [a, b] = bc.normalized(k);
  if (b == Complex{}) return 1.0;
  if (a == Complex{}) return -1.0;
  const Complex den = a - kI * b;
  if (den == Complex{}) throw SpectralSingularity("alpha = i beta makes gamma infinite");
  return (a + kI * b) / den;
}

PotentialSpec extend(const HalfLineProblem& problem) {
  problem.potential.validate();
  if (support_hull(problem.potential).x_minus < 0.0)
    throw InvalidInput("half-line potential must be supported in x >= 0");
  return problem.potential;
}

Complex reflection(const HalfLineProblem& problem, Complex k, const OdeTolerances& tol,
                   double atol) {
  const PotentialSpec full = extend(problem);
  const SupportWindow w = truncate(full, 1e-12, 0);
  const Mat2C m = transfer_matrix(full, k, w, tol).m;
  // Homogeneous form of the gamma ratio; p = alpha - i beta, q = alpha + i beta.
  const auto [a, b] = problem.bc.normalized(k);
  Complex p = a - kI * b, q = a + kI * b;
  if (b == Complex{}) p = q = 1.0;
  if (a == Complex{}) p = 1.0, q = -1.0;
  const Complex den = p * m.m21 - q * m.m22;
  if (!(std::abs(den) > atol * std::max(std::abs(p), std::abs(q))))
    throw SpectralSingularity("half-line reflection denominator vanishes");
  return (p * m.m11 - q * m.m12) / den;
}

AmplitudeSeries reflection_series(const HalfLineProblem& problem, const LowEnergyCoefficients& c,
                                  double tau) {
  require_constant(problem.bc);
  const auto [alpha, beta] = problem.bc.normalized();
  AmplitudeSeries s;
  s.ell = c.ell;
  const Complex a1 = c.a1, a2 = c.a2, b1 = c.b1, b2 = c.b2;
  if (beta == Complex{}) {
    const HalfLineVerdict v = classify_halfline_resonance(problem, c, tau);
    if (v.resonant) {
      s.branch = Branch::resonant;
      s.rl = {1.0};
      s.truncation_order = 0;
    } else {
      s.branch = Branch::generic;
      s.rl = {-1.0, -2.0 * kI * a2 / b2};
      s.truncation_order = 1;
    }
    return s;
  }
  const Complex rho = alpha / beta;
  if (!classify_resonance(c, tau).resonant) {
    s.branch = Branch::generic;
    // The rho term enters with a minus sign; this is what the exact delta
    // reflection expands to under gamma = (alpha + i beta)/(alpha - i beta).
    s.rl = {-1.0, -2.0 * kI * a1 / b1, 2.0 * (a1 * a1 - kI * rho) / (b1 * b1)};
    s.truncation_order = 2;
    return s;
  }
  if (!c.g1) throw InvalidInput("resonant half-line series needs g1");
  const Complex den = rho * b2 * b2 + kI;
  if (std::abs(den) < tau) throw SpectralSingularity("rho b2^2 + i vanishes");
  s.branch = Branch::resonant;
  s.rl = {-(rho * b2 * b2 - kI) / den,
          -2.0 * kI * b2 * (rho * rho * a2 * b2 * b2 + *c.g1) / (den * den)};
  s.truncation_order = 1;
  return s;
}

HalfLineVerdict classify_halfline_resonance(const HalfLineProblem& problem,
                                            const LowEnergyCoefficients& c, double tau) {
  if (!(tau > 0.0)) throw InvalidInput("tau must be positive");
  require_constant(problem.bc);
  const auto [alpha, beta] = problem.bc.normalized();
  (void)alpha;
  if (beta == Complex{}) {
    const double scale = std::max({1.0, std::abs(c.a1), std::abs(c.b1)});
    const double margin = std::abs(c.b2) / scale;
    return {margin < tau, "b2", margin};
  }
  const ResonanceVerdict v = classify_resonance(c, tau);
  return {v.resonant, "b1", v.margin};
}

}  // namespace lowscat
