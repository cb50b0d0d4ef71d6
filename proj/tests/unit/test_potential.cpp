#include <cmath>
#include <functional>

#include "doctest.h"
#include "lowscat/potential.hpp"
#include "lowscat/properties.hpp"
#include "test_support.hpp"

using namespace lowscat;

TEST_CASE("parse_potential") {
  const PotentialSpec d = parse_potential(R"({"ell":1,"terms":[{"delta":{"strength":[1,0],"center":0}}]})");
  REQUIRE(d.terms.size() == 1);
  CHECK(std::get<DeltaTerm>(d.terms[0]) == DeltaTerm{1.0, 0.0});
  CHECK(d.ell == 1.0);

  const PotentialSpec b =
      parse_potential(R"({"ell":1,"terms":[{"piecewise":[{"xlo":0,"xhi":1,"value":[2,0]}]}]})");
  REQUIRE(b.terms.size() == 1);
  const auto& pc = std::get<PiecewiseConstantTerm>(b.terms[0]);
  REQUIRE(pc.segments.size() == 1);
  CHECK(pc.segments[0] == Segment{0.0, 1.0, 2.0});
  CHECK(b == make_barrier(2.0, 0.0, 1.0, 1.0));

  CHECK_THROWS_AS(parse_potential(R"({"ell":1,"terms":[{"piecewise":[{"xlo":1,"xhi":1,"value":[2,0]}]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_potential(R"({"ell":1,"terms":[{"piecewise":[{"xlo":2,"xhi":1,"value":[2,0]}]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_potential(R"({"ell":-1,"terms":[]})"), ParseError);
  CHECK_THROWS_AS(parse_potential(R"({"ell":1,"terms":[{"delta":{"strength":[1,0],"center":0,"x":1}}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_potential("not json"), ParseError);
  try {
    parse_potential(R"({"ell":1,"terms":[{"delta":{"strength":[1,0],"center":0}},{"delta":{"strength":"a","center":0}}]})");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.path().find("terms/1") != std::string::npos);
  }
}

TEST_CASE("serialize round trip keeps every bit") {
  PotentialSpec s = make_barrier(Complex(0.1, 1.0 / 3.0), -0.7, std::sqrt(2.0), M_PI);
  s.terms.push_back(DeltaTerm{Complex(1e-17, -2.5), 1.0 / 7.0});
  SampledTerm st;
  st.grid.nodes = {3.0, 3.1, 3.3};
  st.grid.values = {0.0, Complex(0.2, 0.1), 0.0};
  s.terms.push_back(st);
  CHECK(parse_potential(serialize_potential(s)) == s);
}

TEST_CASE("evaluate") {
  const Complex z(1.5, -0.5);
  const PotentialSpec b = make_barrier(z, 0.25, 2.0, 1.0);
  CHECK(evaluate(b, 0.25 + 1.0) == z);
  CHECK(evaluate(b, 0.25 - 1.0) == Complex{});
  CHECK(evaluate(make_delta(3.0, 0.0, 1.0), 0.0) == Complex{});
  CHECK(evaluate(make_delta(3.0, 0.0, 1.0), 0.4) == Complex{});

  SampledTerm st;
  st.grid.nodes = {0.0, 1.0, 2.0};
  st.grid.values = {0.0, 2.0, 0.0};
  PotentialSpec s;
  s.terms.push_back(st);
  CHECK(evaluate(s, 0.5) == Complex(1.0));
  CHECK(evaluate(s, 2.5) == Complex{});
}

TEST_CASE("truncate") {
  const SupportWindow w = truncate(make_barrier(2.0, 0.0, 1.0, 1.0), 1e-12, 3);
  CHECK(w.x_minus == 0.0);
  CHECK(w.x_plus == 1.0);

  PotentialSpec s = make_barrier(2.0, 0.0, 1.0, 1.0);
  s.terms.push_back(DeltaTerm{1.0, 3.0});
  const SupportWindow h = truncate(s, 1e-12, 3);
  CHECK(h.x_minus == 0.0);
  CHECK(h.x_plus == 3.0);

  // Sampled data reaching far out with a tail bound: the window is the
  // root of e^{-2x} (1 + x)^3 = 1e-12, found here by plain bisection.
  PotentialSpec t;
  SampledTerm st;
  for (int i = 0; i <= 100; ++i) {
    st.grid.nodes.push_back(-50.0 + i);
    st.grid.values.push_back(std::exp(-2.0 * std::abs(-50.0 + i)));
  }
  t.terms.push_back(st);
  t.tail = TailBound{2.0, 1.0};
  const std::function<double(double)> f = [](double x) { return std::exp(-2.0 * x) * std::pow(1.0 + x, 3) - 1e-12; };
  double lo = 5.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) ((f(0.5 * (lo + hi)) > 0) ? lo : hi) = 0.5 * (lo + hi);
  const SupportWindow tw = truncate(t, 1e-12, 1);
  CHECK(tw.x_plus == doctest::Approx(lo).epsilon(1e-12));
  CHECK(tw.x_minus == doctest::Approx(-lo).epsilon(1e-12));

  t.tail.reset();
  CHECK_THROWS_AS(truncate(t, 1e-12, 1), ConfigurationError);
  CHECK_THROWS_AS(truncate(s, 0.0, 1), InvalidInput);
}

TEST_CASE("partition splits at deltas and segment ends") {
  PotentialSpec s = make_barrier(2.0, 0.0, 1.0, 1.0);
  s.terms.push_back(DeltaTerm{0.5, 0.5});
  const Partition p(s, {-1.0, 2.0});
  REQUIRE(p.panels().size() == 4);
  CHECK(p.panels()[0].vanishes);
  CHECK_FALSE(p.panels()[1].vanishes);
  CHECK(p.join_strength()[1] == Complex(0.5));
  CHECK(p.locate(0.5) == 1);
  CHECK(p.locate(0.75) == 2);
  // cumulate_against_v of 1 is the running integral of v (plus the delta).
  std::vector<Complex> ones(p.size(), 1.0);
  const auto c = p.cumulate_against_v<Complex>(ones);
  CHECK(testing::err(c.back(), 2.5) <= 1e-13);
}

TEST_CASE("potential properties, short run") {
  const PropertyReport r = check_potential_properties(11, 300);
  INFO(r.first_failure);
  CHECK(r.passed());
}
