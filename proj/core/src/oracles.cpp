#include "lowscat/oracles.hpp"

#include <cmath>

namespace lowscat {

namespace {

constexpr double kSeriesRadius = 1e-3;

}  // namespace

DeltaParams DeltaParams::from_phase(double zeta, double a_hat, double ell) {
  if (!(ell > 0.0)) throw InvalidInput("ell must be positive");
  return {std::polar(1.0 / ell, zeta), a_hat * ell};
}

Complex cosh_sqrt(Complex w) {
  if (std::abs(w) < kSeriesRadius) {
    // 1 + w/2 + w^2/24 + w^3/720 + w^4/40320
    return 1.0 + w * (1.0 / 2 + w * (1.0 / 24 + w * (1.0 / 720 + w / 40320.0)));
  }
  return std::cosh(std::sqrt(w));
}

Complex sinhc_sqrt(Complex w) {
  if (std::abs(w) < kSeriesRadius) {
    // 1 + w/6 + w^2/120 + w^3/5040 + w^4/362880
    return 1.0 + w * (1.0 / 6 + w * (1.0 / 120 + w * (1.0 / 5040 + w / 362880.0)));
  }
  const Complex r = std::sqrt(w);
  return std::sinh(r) / r;
}

Mat2C barrier_transfer(const BarrierParams& p, Complex k) {
  if (k == Complex{}) throw PoleError();
  if (!(p.L > 0.0)) throw InvalidInput("barrier width must be positive");
  const double L = p.L;
  auto m11 = [&](Complex q) {
    const Complex u = L * L * (p.z - q * q);
    return std::exp(-kI * q * L) *
           (cosh_sqrt(u) - kI * (p.z / (2.0 * q * q) - 1.0) * q * L * sinhc_sqrt(u));
  };
  auto m12 = [&](Complex q) {
    const Complex u = L * L * (p.z - q * q);
    return -kI * p.z * std::exp(-kI * q * (2.0 * p.a + L)) * L * sinhc_sqrt(u) / (2.0 * q);
  };
  return {m11(k), m12(k), m12(-k), m11(-k)};
}

LowEnergyCoefficients barrier_lowk(const BarrierParams& p) {
  const double L = p.L, a = p.a, l = p.ell;
  const Complex z = p.z;
  const Complex c = cosh_sqrt(L * L * z);
  const Complex s = sinhc_sqrt(L * L * z);
  LowEnergyCoefficients out;
  out.a1 = c - L * (a + L) * z * s;
  out.b1 = l * L * z * s;
  out.a2 = -(L / l) * (c + (a * (a + L) * z - 1.0) * s);
  out.b2 = c + a * L * z * s;
  out.g1 = -(L / (2.0 * l)) * (c - ((2.0 * a * a + 2.0 * a * L + L * L) * z + 1.0) * s);
  out.ell = l;
  return out;
}

Complex DeltaClosedForms::halfline_reflection(Complex k, Complex gamma) const {
  const Complex z = params.z;
  const double a = params.a;
  return (z * (1.0 - gamma * std::exp(-2.0 * kI * a * k)) + 2.0 * kI * k) /
         (z * (gamma - std::exp(2.0 * kI * a * k)) - 2.0 * kI * gamma * k);
}

DeltaClosedForms delta_all(const DeltaParams& p, Complex k, int order) {
  if (p.z == Complex{}) throw InvalidInput("delta strength must be nonzero");
  if (order < 0 || order > 3) throw InvalidInput("delta series order must be in [0, 3]");
  DeltaClosedForms out;
  out.params = p;
  const Complex z = p.z;
  const double ah = p.a_hat();
  const Complex e = std::exp(kI * p.zeta());
  const Complex em = 1.0 / e;

  if (k != Complex{}) {
    const Complex w = kI * z / (2.0 * k);
    out.transfer = {1.0 - w, -w * std::exp(-2.0 * kI * k * p.a), w * std::exp(2.0 * kI * k * p.a),
                    1.0 + w};
  }
  out.m0 = {1.0 - ah * e, -ah * ah * e, e, 1.0 + ah * e};
  out.coeffs.a1 = 1.0 - ah * e;
  out.coeffs.b1 = e;
  out.coeffs.a2 = -ah * ah * e;
  out.coeffs.b2 = 1.0 + ah * e;
  out.coeffs.g1 = ah * ah * e;
  out.coeffs.ell = p.ell();

  AmplitudeSeries& s = out.series;
  s.branch = Branch::generic;
  s.ell = p.ell();
  s.truncation_order = order;
  const std::vector<Complex> rl{-1.0, -2.0 * kI * (ah + em),
                                2.0 * (ah * ah + 2.0 * ah * em + 2.0 * em * em)};
  const std::vector<Complex> rr{-1.0, 2.0 * kI * (ah - em),
                                2.0 * (ah * ah - 2.0 * ah * em + 2.0 * em * em)};
  const std::vector<Complex> t{0.0, -2.0 * kI * em, 4.0 * em * em, 8.0 * kI * em * em * em};
  const long nr = std::min(order, 2) + 1;
  s.rl.assign(rl.begin(), rl.begin() + nr);
  s.rr.assign(rr.begin(), rr.begin() + nr);
  s.t.assign(t.begin(), t.begin() + order + 1);
  return out;
}

}  // namespace lowscat
