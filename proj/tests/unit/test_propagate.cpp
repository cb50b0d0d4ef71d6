#include <cmath>

#include "derived_values.hpp"
#include "doctest.h"
#include "lowscat/config.hpp"
#include "lowscat/properties.hpp"
#include "lowscat/propagate.hpp"
#include "test_support.hpp"

using namespace lowscat;
using testing::err;

TEST_CASE("hamiltonian") {
  const PotentialSpec free = testing::free_space();
  CHECK(hamiltonian(free, 0.3, 1.0) == Mat2C::zero());
  const PotentialSpec b = make_barrier(Complex(2, 1), 0.0, 1.0, 1.0);
  for (double x : {0.1, 0.5, 0.9})
    for (Complex k : {Complex(0.3), Complex(2, 0.5)}) {
      const Mat2C h = hamiltonian(b, x, k);
      CHECK((h * h).max_abs() <= 1e-15 * h.norm() * h.norm());
      CHECK(std::abs(h.trace()) <= 1e-15 * h.norm());
    }
  CHECK_THROWS_AS(hamiltonian(b, 0.5, 0.0), PoleError);
}

TEST_CASE("delta_jump") {
  CHECK(delta_jump(0.0, 1.3, 0.8) == Mat2C::identity());
  const double z = 1.7;
  const Mat2C m = delta_jump(z, 0.0, 1.0);
  CHECK(err(m.m11, Complex(1, -z / 2)) <= 1e-15);
  CHECK(err(m.m12, Complex(0, -z / 2)) <= 1e-15);
  CHECK(err(m.m21, Complex(0, z / 2)) <= 1e-15);
  CHECK(err(m.m22, Complex(1, z / 2)) <= 1e-15);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Mat2C j = delta_jump(rng.disk(5), rng.uniform(-3, 3), rng.log_uniform(0.05, 5));
    CHECK(err(j.det(), 1.0) <= 1e-13 * std::max(1.0, j.norm() * j.norm()));
  }
}

TEST_CASE("transfer_matrix against high-precision barrier values") {
  for (const derived::BarrierCase* c : {&derived::kRealBarrier, &derived::kComplexBarrier}) {
    const PotentialSpec s = make_barrier(c->z, c->a, c->L, c->ell);
    for (int i = 0; i < 3; ++i) {
      const Mat2C m = transfer_matrix(s, derived::kSampleK[i], support_hull(s), kTightOde).m;
      CHECK(err(m, c->m_at_k[i]) <= 1e-10 * c->m_at_k[i].norm());
    }
  }
}

TEST_CASE("transfer_matrix special cases") {
  const PotentialSpec free = testing::free_space();
  CHECK(transfer_matrix(free, 0.9, {-1, 1}).m == Mat2C::identity());

  const PotentialSpec d = make_delta(Complex(0.4, -1.0), 0.3, 1.0);
  CHECK(transfer_matrix(d, 1.1, truncate(d, 1e-12, 0)).m == delta_jump(Complex(0.4, -1.0), 0.3, 1.1));

  const PotentialSpec b = make_barrier(2.0, 0.0, 1.0, 1.0);
  CHECK_THROWS_AS(transfer_matrix(b, 0.0, support_hull(b)), PoleError);

  // Complex k must stay in the strip Im k > -mu when a tail exists.
  PotentialSpec t = b;
  t.tail = TailBound{1.0, 1.0};
  CHECK_NOTHROW(transfer_matrix(t, Complex(0.5, -0.5), support_hull(b)));
  CHECK_THROWS_AS(transfer_matrix(t, Complex(0.5, -1.5), support_hull(b)), InvalidInput);
}

TEST_CASE("amplitudes") {
  const Amplitudes free = amplitudes(TransferMatrix{1.0, Mat2C::identity()});
  CHECK(free.Rl == Complex{});
  CHECK(free.Rr == Complex{});
  CHECK(free.T == Complex(1.0));

  const Complex z(1.3, 0.4);
  const double a = 0.6;
  const PotentialSpec d = make_delta(z, a, 1.0);
  for (double k : {0.2, 1.0, 4.0}) {
    const Amplitudes am = amplitudes(transfer_matrix(d, k, truncate(d, 1e-12, 0)));
    const Complex den = z - 2.0 * kI * k;
    CHECK(err(am.T, -2.0 * kI * k / den) <= 1e-14);
    CHECK(err(am.Rl, -z * std::exp(2.0 * kI * k * a) / den) <= 1e-14);
    CHECK(err(am.Rr, -z * std::exp(-2.0 * kI * k * a) / den) <= 1e-14);
  }
  // A delta with z = 2ik has M22 = 0 at that k.
  const double k = 0.8;
  const PotentialSpec s = make_delta(2.0 * kI * k, 0.0, 1.0);
  CHECK_THROWS_AS(amplitudes(transfer_matrix(s, k, truncate(s, 1e-12, 0))), SpectralSingularity);
}

TEST_CASE("dyson_transfer") {
  const PotentialSpec free = testing::free_space();
  const DysonResult f = dyson_transfer(free, 0.7, {-1, 1}, 4);
  CHECK(f.tm.m == Mat2C::identity());

  const PotentialSpec d = make_delta(Complex(0.5, 0.5), 0.2, 1.0);
  for (int order : {1, 3}) {
    const DysonResult r = dyson_transfer(d, 1.3, truncate(d, 1e-12, 0), order);
    CHECK(err(r.tm.m, delta_jump(Complex(0.5, 0.5), 0.2, 1.3)) <= 1e-15);
  }

  const PotentialSpec b = make_barrier(Complex(1.5, -0.5), 0.0, 1.0, 1.0);
  const SupportWindow w = support_hull(b);
  const Mat2C exact = transfer_matrix(b, 1.2, w, kTightOde).m;
  const DysonResult r = dyson_transfer(b, 1.2, w, 16);
  CHECK(err(r.tm.m, exact) <= 1e-9);
  CHECK(r.remainder_bound < 1e-6);
  CHECK_THROWS_AS(dyson_transfer(b, 1.2, w, 0), InvalidInput);
}

TEST_CASE("propagate properties, short run") {
  const PropertyReport r = check_propagate_properties(5, 100);
  INFO(r.first_failure);
  CHECK(r.passed());
}
