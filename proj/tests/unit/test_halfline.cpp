#include <cmath>

#include "derived_values.hpp"
#include "doctest.h"
#include "lowscat/config.hpp"
#include "lowscat/halfline.hpp"
#include "lowscat/oracles.hpp"
#include "lowscat/properties.hpp"
#include "test_support.hpp"

using namespace lowscat;
using testing::err;

namespace {

LowEnergyCoefficients coeffs_for(const HalfLineProblem& p) {
  const PotentialSpec e = extend(p);
  return full_coefficients(solve_phi(e, truncate(e, 1e-12, 3), kTightOde));
}

}  // namespace

TEST_CASE("gamma") {
  CHECK(gamma(BoundaryCondition::dirichlet()) == Complex(1.0));
  CHECK(gamma(BoundaryCondition::neumann()) == Complex(-1.0));
  BoundaryCondition r{1.0, 2.0, {}};
  CHECK(err(gamma(r), Complex(1.0, 2.0) / Complex(1.0, -2.0)) <= 1e-15);
  CHECK(std::abs(gamma(r)) == doctest::Approx(1.0));
  CHECK_THROWS(gamma(BoundaryCondition{0.0, 0.0, {}}));
}

TEST_CASE("reflection against high-precision values") {
  for (const auto& c : derived::kHalfLine) {
    const HalfLineProblem p{make_barrier(c.z, c.a, c.L, 1.0), {c.alpha, c.beta, {}}};
    CHECK(err(reflection(p, c.k, kTightOde), c.r) <= 1e-9 * std::max(1.0, std::abs(c.r)));
  }
}

TEST_CASE("reflection on free space") {
  const PotentialSpec free = make_barrier(0.0, 0.0, 1.0, 1.0);
  for (double k : {0.1, 2.0}) {
    CHECK(err(reflection({free, BoundaryCondition::dirichlet()}, k), -1.0) <= 1e-15);
    CHECK(err(reflection({free, BoundaryCondition::neumann()}, k), 1.0) <= 1e-15);
  }
}

TEST_CASE("reflection for a delta matches the closed form") {
  const DeltaParams dp = DeltaParams::from_phase(0.4, 0.7, 1.0);
  for (const BoundaryCondition& bc : {BoundaryCondition::dirichlet(), BoundaryCondition{1.0, 0.5, {}}}) {
    const HalfLineProblem p{make_delta(dp.z, dp.a, 1.0), bc};
    for (double k : {0.05, 0.6, 2.5}) {
      const Complex want = delta_all(dp, k).halfline_reflection(k, gamma(bc));
      CHECK(err(reflection(p, k), want) <= 1e-13 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("reflection_series") {
  // Dirichlet, generic: R ~ -1 + ...
  const HalfLineProblem p{make_barrier(2.0, 0.3, 1.0, 1.0), BoundaryCondition::dirichlet()};
  const LowEnergyCoefficients c = coeffs_for(p);
  const AmplitudeSeries s = reflection_series(p, c);
  CHECK(s.branch == Branch::generic);
  CHECK(err(s.rl[0], -1.0) <= 1e-15);
  const double k = 1e-3;
  CHECK(err(sum_series(s.rl, k, 1.0), reflection(p, k, kTightOde)) <= 1e-5);

  const HalfLineProblem q{make_barrier(2.0, 0.3, 1.0, 1.0), BoundaryCondition{1.0, 0.5, {}}};
  const AmplitudeSeries sq = reflection_series(q, coeffs_for(q));
  CHECK(err(sq.rl[0], -1.0) <= 1e-15);
  CHECK(err(sum_series(sq.rl, k, 1.0), reflection(q, k, kTightOde)) <= 1e-6);

  // Delta closed form under Dirichlet.
  const DeltaParams dp = DeltaParams::from_phase(-0.5, 0.8, 1.0);
  const HalfLineProblem d{make_delta(dp.z, dp.a, 1.0), BoundaryCondition::dirichlet()};
  const AmplitudeSeries sd = reflection_series(d, coeffs_for(d));
  for (double kk : {1e-3, 3e-3}) {
    const Complex want = delta_all(dp, kk).halfline_reflection(kk, 1.0);
    CHECK(err(sum_series(sd.rl, kk, 1.0), want) <= 30.0 * kk * kk);
  }
}

TEST_CASE("half-line resonances") {
  // Dirichlet with a delta at a: b2 = 1 + a z vanishes at z = -1/a.
  const double a = 0.5;
  const HalfLineProblem d{make_delta(-1.0 / a, a, a), BoundaryCondition::dirichlet()};
  const LowEnergyCoefficients cd = coeffs_for(d);
  const HalfLineVerdict vd = classify_halfline_resonance(d, cd, 1e-8);
  CHECK(vd.resonant);
  CHECK(vd.criterion == "b2");
  const AmplitudeSeries sd = reflection_series(d, cd);
  CHECK(sd.branch == Branch::resonant);
  CHECK(err(sd.rl[0], 1.0) <= 1e-12);

  // Barrier on [a, a + 1], Dirichlet: q tan q = 1/a with z = -q^2.
  const double ab = 1.0;
  double lo = 0.1, hi = M_PI / 2 - 1e-12;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::tan(mid) < 1.0 / ab ? lo : hi) = mid;
  }
  const double q = 0.5 * (lo + hi);
  const HalfLineProblem b{make_barrier(-q * q, ab, 1.0, 1.0), BoundaryCondition::dirichlet()};
  const HalfLineVerdict vb = classify_halfline_resonance(b, coeffs_for(b), 1e-8);
  CHECK(vb.resonant);

  // beta != 0 uses b1: z = -pi^2 barrier.
  const HalfLineProblem r{make_barrier(-M_PI * M_PI, 0.2, 1.0, 1.0), BoundaryCondition{1.0, 1.0, {}}};
  const HalfLineVerdict vr = classify_halfline_resonance(r, coeffs_for(r), 1e-8);
  CHECK(vr.criterion == "b1");
  CHECK(vr.resonant);
  const HalfLineProblem n{make_barrier(-2.0, 0.2, 1.0, 1.0), BoundaryCondition{1.0, 1.0, {}}};
  CHECK_FALSE(classify_halfline_resonance(n, coeffs_for(n), 1e-8).resonant);
}

TEST_CASE("extend") {
  const PotentialSpec d = make_delta(-1.0, -0.5, 1.0);
  CHECK_THROWS_AS(extend({d, BoundaryCondition::dirichlet()}), InvalidInput);
  const PotentialSpec b = make_barrier(1.0, 0.2, 1.0, 1.0);
  CHECK(extend({b, BoundaryCondition::dirichlet()}) == b);
}

TEST_CASE("halfline properties, short run") {
  const PropertyReport r = check_halfline_properties(19, 30);
  INFO(r.first_failure);
  CHECK(r.passed());
}
