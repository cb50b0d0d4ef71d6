#include <cmath>

#include "derived_values.hpp"
#include "doctest.h"
#include "lowscat/config.hpp"
#include "lowscat/lowenergy.hpp"
#include "lowscat/oracles.hpp"
#include "lowscat/properties.hpp"
#include "test_support.hpp"

using namespace lowscat;
using testing::err;

namespace {

ZeroEnergyField field_for(const PotentialSpec& s) {
  return solve_phi(s, truncate(s, 1e-12, 3), kTightOde);
}

}  // namespace

TEST_CASE("scd_coefficients") {
  const ScdCoefficients c1 = scd_coefficients(1);
  CHECK(c1.s == Rational{-2, 3});
  CHECK(c1.c == Rational{-1, 3});
  CHECK(c1.d == Rational{-1, 1});
  const ScdCoefficients c2 = scd_coefficients(2);
  CHECK(c2.s == Rational{2, 15});
  CHECK(c2.c == Rational{2, 45});
  CHECK(c2.d == Rational{1, 3});
  CHECK_NOTHROW(scd_coefficients(kMaxScdIndex));
  CHECK_THROWS_AS(scd_coefficients(0), InvalidInput);
  CHECK_THROWS_AS(scd_coefficients(kMaxScdIndex + 1), InvalidInput);

  // 1 + sum s_n (x/2)^{2n} ... with x = 0.6: sin(2y)/(2y) = 1 + sum s_n y^{2n}.
  const double y = 0.3;
  double sum = 1.0;
  for (int n = 1; n <= kMaxScdIndex; ++n) sum += scd_coefficients(n).s.value() * std::pow(y, 2 * n);
  CHECK(sum == doctest::Approx(std::sin(0.6) / 0.6).epsilon(1e-15));
}

TEST_CASE("recursion_step sequencing") {
  const ZeroEnergyField f = field_for(make_barrier(1.0, 0.0, 1.0, 1.0));
  RecursionState s = initial_state(f);
  CHECK(s.next_m() == -1);
  CHECK_THROWS_AS(recursion_step(0, s, f), SequencingError);
  const RecursionOutput o = recursion_step(-1, s, f);
  // G_{-1} = -i phi1' (1, 1), zero at x_minus.
  CHECK(o.g.front().max_abs() == 0.0);
  CHECK(s.next_m() == 0);
  CHECK_NOTHROW(recursion_step(0, s, f));
  CHECK_NOTHROW(recursion_step(1, s, f));
  CHECK_THROWS_AS(recursion_step(1, s, f), SequencingError);
  CHECK_THROWS_AS(recursion_step(-2, s, f), InvalidInput);

  const ZeroEnergyField other = field_for(make_delta(1.0, 0.0, 1.0));
  RecursionState s2 = initial_state(other);
  CHECK_THROWS_AS(recursion_step(-1, s2, f), SequencingError);
}

TEST_CASE("laurent_expansion against contour coefficients") {
  for (const derived::BarrierCase* bc : {&derived::kRealBarrier, &derived::kComplexBarrier}) {
    const LaurentExpansion le = laurent_expansion(field_for(make_barrier(bc->z, bc->a, bc->L, bc->ell)), 3);
    CHECK(le.order_max() == 3);
    for (int m = -1; m <= 3; ++m) {
      INFO("m = " << m);
      CHECK(err(le.at(m), bc->u[m + 1]) <= 1e-9 * std::max(1.0, bc->u[m + 1].norm()));
    }
  }
  const PotentialSpec free = testing::free_space();
  const LaurentExpansion fe = laurent_expansion(solve_phi(free, {-1, 1}), 2);
  CHECK(fe.at(-1) == Mat2C::zero());
  CHECK(err(fe.at(0), Mat2C::identity()) <= 1e-15);
  CHECK(fe.at(1).max_abs() <= 1e-15);
  CHECK_THROWS_AS(laurent_expansion(solve_phi(free, {-1, 1}), 0), InvalidInput);
  CHECK_THROWS_AS(laurent_expansion(solve_phi(free, {-1, 1}), kMaxLaurentOrder + 1), InvalidInput);
}

TEST_CASE("laurent_expansion reproduces the barrier M11 closed form") {
  const BarrierParams p{Complex(-1.0, 2.0), 0.0, 1.0, 1.0};
  const LaurentExpansion le = laurent_expansion(field_for(make_barrier(p.z, p.a, p.L, p.ell)), 8);
  for (double k : {0.05, 0.2}) {
    const Mat2C exact = barrier_transfer(p, k);
    CHECK(err(le.evaluate(k, 8), exact) <= 1e-8 * exact.norm());
  }
}

TEST_CASE("amplitude_series generic branch") {
  for (const derived::BarrierCase* bc : {&derived::kRealBarrier, &derived::kComplexBarrier}) {
    const LowEnergyCoefficients c = full_coefficients(field_for(make_barrier(bc->z, bc->a, bc->L, bc->ell)));
    const AmplitudeSeries s = amplitude_series(c, 3);
    CHECK(s.branch == Branch::generic);
    REQUIRE(s.t.size() == 4);
    CHECK(s.rl.size() == 3);
    for (int n = 0; n < 4; ++n) CHECK(err(s.t[n], bc->t[n]) <= 1e-9);
  }
  const PotentialSpec free = testing::free_space();
  const LowEnergyCoefficients c0 = coefficients(solve_phi(free, {-1, 1}));
  // b1 = 0: free space is resonant, T -> 1.
  const AmplitudeSeries f = amplitude_series(c0, 0);
  CHECK(f.branch == Branch::resonant);
  CHECK(err(f.t[0], 1.0) <= 1e-15);
  CHECK(err(f.rl[0], 0.0) <= 1e-15);
}

TEST_CASE("amplitude_series resonant branch") {
  // z = -pi^2 on [0, 1]: b1 = 0, b2 = cos(pi) = -1, T(0) = -1.
  const PotentialSpec b = make_barrier(-M_PI * M_PI, 0.0, 1.0, 1.0);
  const LowEnergyCoefficients c = full_coefficients(field_for(b));
  const AmplitudeSeries s = amplitude_series(c, 1, 1e-6);
  CHECK(s.branch == Branch::resonant);
  CHECK(err(s.t[0], -1.0) <= 1e-9);
  CHECK(std::abs(s.rl[0]) <= 1e-9);
  CHECK(s.t.size() == 2);
  const double k = 1e-3;
  const Amplitudes am = amplitudes(transfer_matrix(b, k, support_hull(b), kTightOde));
  CHECK(err(sum_series(s.t, k, 1.0), am.T) <= 1e-5);
  CHECK_THROWS_AS(amplitude_series(c, 2, 1e-6), InvalidInput);

  LowEnergyCoefficients sing{1.0, 0.0, 0.0, kI, std::nullopt, 1.0};
  CHECK_THROWS_AS(amplitude_series(sing, 0), SpectralSingularity);
  LowEnergyCoefficients contra{1.0, 0.0, 0.0, 0.0, std::nullopt, 1.0};
  CHECK_THROWS_AS(amplitude_series(contra, 0), ContradictionError);
  LowEnergyCoefficients no_g1{1.0, 0.0, 0.0, 1.0, std::nullopt, 1.0};
  CHECK_THROWS_AS(amplitude_series(no_g1, 1), InvalidInput);
}

TEST_CASE("amplitude_series error branches") {
  LowEnergyCoefficients c{1.0, 0.0, 1.0, 1.0, std::nullopt, 1.0};
  CHECK_THROWS_AS(amplitude_series(c, -1), InvalidInput);
  CHECK_THROWS_AS(amplitude_series(c, 3), InvalidInput);
  CHECK_THROWS_AS(amplitude_series(c, 4), InvalidInput);
  CHECK_NOTHROW(amplitude_series(c, 2));
}

TEST_CASE("classify_resonance") {
  LowEnergyCoefficients c{2.0, 0.0, 1e-9, 0.5, std::nullopt, 1.0};
  ResonanceVerdict v = classify_resonance(c, 1e-8);
  CHECK(v.resonant);
  CHECK(v.margin == doctest::Approx(5e-10));
  c.b1 = 1e-7;
  v = classify_resonance(c, 1e-8);
  CHECK_FALSE(v.resonant);
  const AmplitudeSeries s = amplitude_series(c, 2, 1e-8);
  CHECK(s.ill_conditioned);
  CHECK_THROWS_AS(classify_resonance(c, 0.0), InvalidInput);
}

TEST_CASE("sum_series") {
  CHECK(sum_series({}, 0.5, 1.0) == Complex{});
  CHECK(err(sum_series({1.0, 2.0, 3.0}, 0.5, 2.0), 1.0 + 2.0 + 3.0) <= 1e-15);
}

TEST_CASE("cauchy_coefficients") {
  const PotentialSpec d = make_delta(1.0, 0.0, 1.0);
  const std::vector<Mat2C> c = cauchy_coefficients(d, truncate(d, 1e-12, 0), -1, 0, 0.5, 32);
  // M = I - (i/2k) K for a unit delta at 0.
  CHECK(err(c[0], Mat2C{-0.5 * kI, -0.5 * kI, 0.5 * kI, 0.5 * kI}) <= 1e-13);
  CHECK(err(c[1], Mat2C::identity()) <= 1e-13);
  CHECK_THROWS_AS(cauchy_coefficients(d, {-1, 1}, 0, -1, 0.5, 32), InvalidInput);
}

TEST_CASE("lowenergy properties, short run") {
  const PropertyReport r = check_lowenergy_properties(17, 20);
  INFO(r.first_failure);
  CHECK(r.passed());
}
