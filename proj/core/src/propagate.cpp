#include "lowscat/propagate.hpp"

#include <cmath>

namespace lowscat {

namespace {

void check_k(Complex k) {
  if (k == Complex{}) throw PoleError();
  if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) throw InvalidInput("k must be finite");
}

void check_strip(const PotentialSpec& spec, Complex k) {
  if (spec.tail && !(k.imag() > -spec.tail->mu))
    throw InvalidInput("Im k must exceed -mu for a potential with an exponential tail");
}

// One interval per panel: the ODE route only needs the breakpoints.
const GridOptions kBreakpointsOnly{1, 0.0, 1, 1};

}  // namespace

Mat2C rotated_k(double x, Complex k) {
  const Complex e = std::exp(-2.0 * kI * k * x);
  return {1.0, e, -1.0 / e, -1.0};
}

Mat2C hamiltonian(const PotentialSpec& spec, double x, Complex k) {
  check_k(k);
  const Complex v = evaluate(spec, x);
  if (v == Complex{}) return Mat2C::zero();
  return rotated_k(x, k) * (v / (2.0 * k));
}

Mat2C delta_jump(Complex strength, double center, Complex k) {
  check_k(k);
  return Mat2C::identity() - rotated_k(center, k) * (kI * strength / (2.0 * k));
}

Mat2C evolution(const PotentialSpec& spec, Complex k, double x_from, double x_to,
                const OdeTolerances& tol) {
  check_k(k);
  const Partition part(spec, {x_from, x_to}, kBreakpointsOnly);
  Mat2C u = Mat2C::identity();
  const auto& panels = part.panels();
  for (std::size_t p = 0; p < panels.size(); ++p) {
    if (p > 0) {
      const Complex z = part.join_strength()[p - 1];
      if (z != Complex{}) u = delta_jump(z, panels[p].lo, k) * u;
    }
    const Panel& pn = panels[p];
    if (pn.vanishes || pn.hi == pn.lo) continue;
    const Complex inv2k = 1.0 / (2.0 * k);
    auto rhs = [&](double x) { return rotated_k(x, k) * (part.potential(p, x) * inv2k); };
    u = integrate_linear_ode(rhs, pn.lo, pn.hi, u, tol);
  }
  return u;
}

TransferMatrix transfer_matrix(const PotentialSpec& spec, Complex k, SupportWindow window,
                               const OdeTolerances& tol) {
  check_k(k);
  check_strip(spec, k);
  return {k, evolution(spec, k, window.x_minus, window.x_plus, tol)};
}

Amplitudes amplitudes(const TransferMatrix& tm, double atol) {
  const Mat2C& m = tm.m;
  if (!(std::abs(m.m22) > atol))
    throw SpectralSingularity("|M22| vanishes: transmission pole / spectral singularity");
  return {-m.m21 / m.m22, m.m12 / m.m22, 1.0 / m.m22, tm.k};
}

DysonResult dyson_transfer(const PotentialSpec& spec, Complex k, SupportWindow window, int order,
                           const GridOptions& grid) {
  check_k(k);
  if (order < 1) throw InvalidInput("Dyson order must be >= 1");
  const Partition part(spec, window, grid, std::abs(k));
  const auto& x = part.x();
  const Complex inv2k = 1.0 / (2.0 * k);

  // Frobenius norm of H integrated over the window, delta terms included.
  std::vector<Complex> hnorm(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) hnorm[i] = rotated_k(x[i], k).norm() * std::abs(inv2k);
  double h_int = 0.0;
  {
    // Integrate |v| ||N|| / 2|k| with |v| taken panel-wise.
    const auto& panels = part.panels();
    for (std::size_t p = 0; p < panels.size(); ++p) {
      if (p > 0) h_int += std::abs(part.join_strength()[p - 1]) * hnorm[panels[p - 1].last].real();
      const Panel& pn = panels[p];
      if (pn.vanishes || pn.last == pn.first) continue;
      Grid g;
      for (std::size_t i = pn.first; i <= pn.last; ++i) {
        g.nodes.push_back(x[i]);
        g.values.push_back(std::abs(part.v()[i]) * hnorm[i]);
      }
      h_int += quad(g).value.real();
    }
  }

  // P_n(x) = -i int v(t) N(t)/(2k) P_{n-1}(t) dt, P_0 = I.
  std::vector<Mat2C> prev(x.size(), Mat2C::identity());
  std::vector<Mat2C> f(x.size());
  Mat2C total = Mat2C::identity();
  DysonResult out;
  out.term_norms.push_back(Mat2C::identity().norm());
  out.partial_sums.push_back(total);
  for (int n = 1; n <= order; ++n) {
    for (std::size_t i = 0; i < x.size(); ++i) f[i] = (rotated_k(x[i], k) * prev[i]) * (-kI * inv2k);
    prev = part.cumulate_against_v<Mat2C>(f);
    total += prev.back();
    out.term_norms.push_back(prev.back().norm());
    out.partial_sums.push_back(total);
  }
  out.tm = {k, total};
  out.h_norm_integral = h_int;
  out.remainder_bound = std::pow(h_int, order + 1) / std::tgamma(order + 2.0) * std::exp(h_int);
  return out;
}

}  // namespace lowscat
