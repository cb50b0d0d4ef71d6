#include "lowscat/zeroenergy.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace lowscat {

namespace {

// (phi, phi') pairs for both solutions packed as columns of a 2x2 matrix.
Mat2C pack(const PhiValues& p) { return {p.phi1, p.phi2, p.dphi1, p.dphi2}; }
PhiValues unpack(const Mat2C& m) { return {m.m11, m.m21, m.m12, m.m22}; }

// One step of -phi'' + v phi = 0 written as i dY/dx = (i [[0,1],[v,0]]) Y.
PhiValues advance(const Partition& part, std::size_t p, double x0, double x1, const PhiValues& y,
                  const OdeTolerances& tol) {
  if (x0 == x1) return y;
  if (part.panels()[p].vanishes) {
    const double h = x1 - x0;
    return {y.phi1 + h * y.dphi1, y.dphi1, y.phi2 + h * y.dphi2, y.dphi2};
  }
  auto rhs = [&](double x) { return Mat2C{0.0, kI, kI * part.potential(p, x), 0.0}; };
  return unpack(integrate_linear_ode(rhs, x0, x1, pack(y), tol));
}

PhiValues affine(const PhiValues& y, double h) {
  return {y.phi1 + h * y.dphi1, y.dphi1, y.phi2 + h * y.dphi2, y.dphi2};
}

// Node index i in panel p with x_i <= x < x_{i+1}.
std::size_t node_below(const Partition& part, std::size_t p, double x) {
  const Panel& pn = part.panels()[p];
  const auto& xs = part.x();
  auto it = std::upper_bound(xs.begin() + static_cast<long>(pn.first),
                             xs.begin() + static_cast<long>(pn.last) + 1, x);
  return std::max(pn.first, static_cast<std::size_t>(it - xs.begin()) - 1);
}

// 5-point Gauss-Legendre on [a, b].
template <class F>
Complex gauss5(F&& f, double a, double b) {
  static constexpr std::array<double, 5> t{0.0, -0.5384693101056831, 0.5384693101056831,
                                           -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> w{0.5688888888888889, 0.4786286704993665,
                                           0.4786286704993665, 0.2369268850561891,
                                           0.2369268850561891};
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  Complex s{};
  for (int j = 0; j < 5; ++j) s += w[j] * f(c + r * t[j]);
  return r * s;
}

Mat2C z_kernel(double x, double ell) { return {-x, -x * x / ell, ell, x}; }

}  // namespace

ZeroEnergyField::ZeroEnergyField(Partition part, std::vector<PhiValues> values, OdeTolerances tol)
    : part_(std::move(part)), values_(std::move(values)), tol_(tol) {
  if (values_.size() != part_.size()) throw InvalidInput("field size does not match its partition");
}

PhiValues ZeroEnergyField::at(double x) const {
  const SupportWindow w = window();
  if (x <= w.x_minus) return affine(values_.front(), x - part_.x().front());
  if (x > w.x_plus) return affine(values_.back(), x - part_.x().back());
  const std::size_t p = part_.locate(x);
  const std::size_t i = node_below(part_, p, x);
  if (part_.x()[i] == x) return values_[i];
  return advance(part_, p, part_.x()[i], x, values_[i], tol_);
}

double ZeroEnergyField::wronskian_residual() const {
  double r = 0.0;
  for (const auto& p : values_)
    r = std::max(r, std::abs(ell() * (p.phi1 * p.dphi2 - p.dphi1 * p.phi2) - 1.0));
  return r;
}

ZeroEnergyField solve_phi(const PotentialSpec& spec, SupportWindow window, const OdeTolerances& tol,
                          const GridOptions& grid) {
  spec.validate();
  Partition part(spec, window, grid);
  const auto& xs = part.x();
  const auto& panels = part.panels();
  std::vector<PhiValues> vals(xs.size());
  const double l = spec.ell;
  PhiValues y{1.0, 0.0, window.x_minus / l, 1.0 / l};
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& pn = panels[p];
    if (p > 0) {
      const Complex z = part.join_strength()[p - 1];
      y.dphi1 += z * y.phi1;
      y.dphi2 += z * y.phi2;
    }
    vals[pn.first] = y;
    for (std::size_t i = pn.first + 1; i <= pn.last; ++i) {
      y = advance(part, p, xs[i - 1], xs[i], y, tol);
      vals[i] = y;
    }
  }
  return ZeroEnergyField(std::move(part), std::move(vals), tol);
}

LowEnergyCoefficients coefficients(const ZeroEnergyField& field) {
  const PhiValues& e = field.values().back();
  const double xp = field.x().back();
  const double l = field.ell();
  LowEnergyCoefficients c;
  c.a1 = e.phi1 - xp * e.dphi1;
  c.a2 = e.phi2 - xp * e.dphi2;
  c.b1 = l * e.dphi1;
  c.b2 = l * e.dphi2;
  c.ell = l;
  return c;
}

LowEnergyCoefficients full_coefficients(const ZeroEnergyField& field) {
  LowEnergyCoefficients c = coefficients(field);
  c.g1 = g1_coefficient(field);
  return c;
}

Complex green(const ZeroEnergyField& field, double x, double xt) {
  const PhiValues a = field.at(x), b = field.at(xt);
  return field.ell() * (a.phi1 * b.phi2 - a.phi2 * b.phi1) / field.values().front().phi1;
}

Complex green_dx(const ZeroEnergyField& field, double x, double xt) {
  const PhiValues a = field.at(x), b = field.at(xt);
  return field.ell() * (a.dphi1 * b.phi2 - a.dphi2 * b.phi1) / field.values().front().phi1;
}

std::vector<Complex> varsigma_grid(const ZeroEnergyField& field) {
  const auto& xs = field.x();
  const auto& vals = field.values();
  std::vector<Complex> f(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) f[i] = xs[i] * xs[i] * xs[i] * vals[i].phi1;
  const std::vector<Complex> moment = field.partition().cumulate_against_v<Complex>(f);
  std::vector<Complex> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    out[i] = -(x * x * (3.0 * vals[i].phi1 - x * vals[i].dphi1) + moment[i]) / 3.0;
  }
  return out;
}

Complex varsigma(const ZeroEnergyField& field, double x) {
  const SupportWindow w = field.window();
  const Partition& part = field.partition();
  const auto& xs = field.x();
  const auto& vals = field.values();
  std::vector<Complex> f(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) f[i] = xs[i] * xs[i] * xs[i] * vals[i].phi1;
  const std::vector<Complex> moment = part.cumulate_against_v<Complex>(f);

  Complex m{};
  if (x > w.x_plus) {
    m = moment.back();
  } else if (x > w.x_minus) {
    const std::size_t p = part.locate(x);
    const std::size_t i = node_below(part, p, x);
    m = moment[i];
    if (!part.panels()[p].vanishes && xs[i] < x) {
      m += gauss5([&](double t) { return t * t * t * part.potential(p, t) * field.at(t).phi1; },
                  xs[i], x);
    }
  }
  const PhiValues y = field.at(x);
  return -(x * x * (3.0 * y.phi1 - x * y.dphi1) + m) / 3.0;
}

Complex g1_coefficient(const ZeroEnergyField& field) {
  const std::vector<Complex> vs = varsigma_grid(field);
  const auto& vals = field.values();
  std::vector<Complex> f1(vs.size()), f2(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    f1[i] = vals[i].phi1 * vs[i];
    f2[i] = vals[i].phi2 * vs[i];
  }
  const Partition& part = field.partition();
  const Complex i1 = part.cumulate_against_v<Complex>(f1).back();
  const Complex i2 = part.cumulate_against_v<Complex>(f2).back();
  const PhiValues& e = vals.back();
  return (e.dphi1 * i2 - e.dphi2 * i1) / vals.front().phi1;
}

ZeroTransferMatrix m0_ode(const ZeroEnergyField& field) {
  const LowEnergyCoefficients c = coefficients(field);
  return {{c.a1, c.a2, c.b1, c.b2}};
}

ZeroDysonResult m0_dyson(const PotentialSpec& spec, SupportWindow window, int order,
                         const GridOptions& grid) {
  if (order < 1) throw InvalidInput("Dyson order must be >= 1");
  spec.validate();
  const Partition part(spec, window, grid);
  const auto& xs = part.x();
  const double l = spec.ell;
  std::vector<Mat2C> prev(xs.size(), Mat2C::identity());
  std::vector<Mat2C> f(xs.size());
  ZeroDysonResult out;
  Mat2C total = Mat2C::identity();
  out.term_norms.push_back(total.norm());
  out.partial_sums.push_back(total);
  for (int n = 1; n <= order; ++n) {
    for (std::size_t i = 0; i < xs.size(); ++i) f[i] = z_kernel(xs[i], l) * prev[i];
    prev = part.cumulate_against_v<Mat2C>(f);
    total += prev.back();
    out.term_norms.push_back(prev.back().norm());
    out.partial_sums.push_back(total);
  }
  out.m0 = {total};
  return out;
}

PhiFromU0 phi_from_u0(const PotentialSpec& spec, SupportWindow window, double x, int order,
                      const GridOptions& grid) {
  const double l = spec.ell;
  Mat2C u = Mat2C::identity();
  const double upto = std::min(x, window.x_plus);
  if (upto > window.x_minus) u = m0_dyson(spec, {window.x_minus, upto}, order, grid).m0.m0;
  return {u.m11 + x * u.m21 / l, u.m12 + x * u.m22 / l, u.m11};
}

}  // namespace lowscat
