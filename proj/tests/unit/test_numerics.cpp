#include <cmath>

#include "doctest.h"
#include "lowscat/numerics.hpp"
#include "lowscat/properties.hpp"
#include "test_support.hpp"

using namespace lowscat;
using testing::err;

TEST_CASE("structural constants satisfy the identities of the formulation") {
  const StructuralConstants sc = structural_constants();
  CHECK(sc.K * sc.K == Mat2C::zero());
  CHECK(0.5 * (sc.K * sc.Gamma + sc.KT * sc.Delta) == sc.I);
  CHECK(sc.K * sc.Gamma == sc.I - sc.sigma1);
  CHECK(sc.K == sc.sigma3 + kI * sc.sigma2);
  CHECK(sc.K * sc.Delta == sc.K);
  CHECK(sc.KT * sc.Delta == sc.I + sc.sigma1);
  CHECK(sc.KT == sc.K.transpose());
}

TEST_CASE("mat_mul and mat_det") {
  const Mat2C a{Complex(1, 2), Complex(-0.5, 0), Complex(0, 3), Complex(2, -1)};
  CHECK(mat_mul(Mat2C::identity(), a) == a);
  const StructuralConstants sc = structural_constants();
  for (Complex c : {Complex(0.3, -2), Complex(7, 0), Complex(0, 1e3)})
    CHECK(err(mat_det(Mat2C::identity() + c * sc.K), 1.0) <= 1e-12 * std::norm(c));
  // [[1,1],[-1,-1]] [[1,-1],[1,-1]] expanded by hand.
  CHECK(mat_mul(sc.K, sc.KT) == Mat2C{2.0, -2.0, -2.0, 2.0});
  CHECK(mat_mul(sc.K, sc.KT) == 2.0 * (sc.I - sc.sigma1));
}

TEST_CASE("quad") {
  Grid g;
  for (int i = 0; i <= 100; ++i) {
    g.nodes.push_back(i / 100.0);
    g.values.push_back(i / 100.0);
  }
  CHECK(err(quad(g).value, 0.5) <= 1e-12);

  Grid one{{-2.0, 3.0}, {1.0, 1.0}};
  CHECK(err(quad(one).value, 5.0) <= 1e-14);

  // e^{-x} on [0, 20], nodes denser near 0: trapezoid accuracy only.
  Grid e;
  for (int i = 0; i <= 400; ++i) {
    const double t = i / 400.0;
    e.nodes.push_back(20.0 * t * t);
  }
  for (double x : e.nodes) e.values.push_back(std::exp(-x));
  CHECK(err(quad(e).value, 1.0 - std::exp(-20.0)) <= 1e-4);

  Grid bad{{0.0, 0.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(quad(bad), InvalidInput);
  CHECK_THROWS_AS(quad(Grid{{0.0}, {1.0}}), InvalidInput);
}

TEST_CASE("cumulative_quad ends at quad") {
  Grid g;
  for (int i = 0; i <= 64; ++i) {
    g.nodes.push_back(0.1 * i);
    g.values.push_back(std::polar(1.0, 0.3 * i));
  }
  const auto c = cumulative_quad(g);
  CHECK(c.front() == Complex{});
  const Complex exact = (std::polar(1.0, 19.2) - 1.0) / Complex(0.0, 3.0);
  CHECK(err(c.back(), exact) <= 5e-4);
  CHECK(err(quad(g).value, exact) <= 5e-4);
}

TEST_CASE("integrate_linear_ode") {
  const Mat2C u0{Complex(1, 1), 2.0, 0.5, Complex(0, -1)};
  const OdeTolerances tol{1e-12, 1e-14};
  CHECK(integrate_linear_ode([](double) { return Mat2C::zero(); }, 0.0, 1.0, u0, tol) == u0);

  // i U' = c U with constant scalar c gives U(1) = e^{-ic} u0.
  const Complex c(0.7, -0.2);
  const Mat2C u1 = integrate_linear_ode([&](double) { return c * Mat2C::identity(); }, 0.0, 1.0, u0, tol);
  CHECK(err(u1, std::exp(-kI * c) * u0) <= 1e-11);

  // Backward integration returns to the start.
  auto rhs = [](double x) { return Mat2C{std::sin(x), 1.0, Complex(0, x), -std::sin(x)}; };
  const Mat2C fwd = integrate_linear_ode(rhs, 0.0, 2.0, Mat2C::identity(), tol);
  const Mat2C back = integrate_linear_ode(rhs, 2.0, 0.0, fwd, tol);
  CHECK(err(back, Mat2C::identity()) <= 1e-10);

  CHECK_THROWS_AS(integrate_linear_ode(rhs, 0.0, 1.0, u0, OdeTolerances{0.0, 1e-12}), InvalidInput);
}

TEST_CASE("numerics properties, short run") {
  const PropertyReport r = check_numerics_properties(7, 200);
  INFO(r.first_failure);
  CHECK(r.passed());
}
