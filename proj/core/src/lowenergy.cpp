#include "lowscat/lowenergy.hpp"

#include <numeric>
#include <string>

namespace lowscat {

namespace {

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational reduce(std::int64_t num, std::int64_t den) {
  if (den < 0) num = -num, den = -den;
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

std::int64_t minus_four_pow(int n) {
  std::int64_t p = 1;
  for (int i = 0; i < n; ++i) p *= -4;
  return p;
}

Row delta_row(Complex s) { return kDeltaRow * s; }
Row gamma_row(Complex s) { return kGammaRow * s; }

}  // namespace

ScdCoefficients scd_coefficients(int n) {
  if (n < 1) throw InvalidInput("s/c/d coefficients are defined for n >= 1");
  if (n > kMaxScdIndex)
    throw InvalidInput("s/c/d index " + std::to_string(n) + " exceeds exact int64 range");
  const std::int64_t p = minus_four_pow(n);
  return {reduce(p, factorial(2 * n + 1)), reduce(2 * p, factorial(2 * n + 2)),
          reduce(p, 2 * factorial(2 * n))};
}

RecursionState initial_state(const ZeroEnergyField& field) {
  RecursionState s;
  s.d.push_back(RowField(field.size()));  // D_{-1} = 0
  return s;
}

RecursionOutput recursion_step(int m, RecursionState& state, const ZeroEnergyField& field) {
  if (m < -1) throw InvalidInput("recursion starts at m = -1");
  if (state.d.empty() || m != state.next_m() ||
      state.d.size() != state.g.size() + 1 || state.script_g.size() != state.g.size())
    throw SequencingError("recursion step " + std::to_string(m) + " requested but state holds " +
                          std::to_string(state.g.size()) + " completed steps");
  const std::size_t n_nodes = field.size();
  for (const auto& r : state.d)
    if (r.size() != n_nodes) throw SequencingError("recursion state does not match the field grid");

  const auto& xs = field.x();
  const auto& ph = field.values();
  const double l = field.ell();
  const Complex inv_phi1_minus = 1.0 / ph.front().phi1;
  auto D = [&](int j) -> const RowField& { return state.d[static_cast<std::size_t>(j + 1)]; };
  auto G = [&](int j) -> const RowField& { return state.g[static_cast<std::size_t>(j + 1)]; };

  RecursionOutput out;
  out.g.resize(n_nodes);
  out.script_g.resize(n_nodes);
  out.d_next.resize(n_nodes);

  // Base terms.
  if (m == -1) {
    for (std::size_t i = 0; i < n_nodes; ++i) {
      out.script_g[i] = delta_row(-kI * ph[i].phi1);
      out.g[i] = delta_row(-kI * ph[i].dphi1);
    }
  } else if (m == 0) {
    for (std::size_t i = 0; i < n_nodes; ++i) {
      out.script_g[i] = gamma_row(l * ph[i].phi2);
      out.g[i] = gamma_row(l * ph[i].dphi2);
    }
  }

  RowField q(n_nodes);
  if (m >= 1) {
    RowField e(n_nodes), f(n_nodes);
    for (int n = 1; n <= m / 2 + 1; ++n) {
      const ScdCoefficients k = scd_coefficients(n);
      const RowField& dj = D(m + 1 - 2 * n);
      for (std::size_t i = 0; i < n_nodes; ++i) {
        const double x2n = std::pow(xs[i], 2 * n);
        e[i] += dj[i] * Complex(k.s.value() * x2n);
        f[i] += dj[i] * Complex(k.d.value() * x2n);
      }
    }
    for (int n = 1; n <= (m + 1) / 2; ++n) {
      const ScdCoefficients k = scd_coefficients(n);
      const RowField& gj = G(m - 2 * n);
      for (std::size_t i = 0; i < n_nodes; ++i) {
        const double x2n1 = std::pow(xs[i], 2 * n + 1);
        e[i] -= gj[i] * Complex(k.c.value() * x2n1);
        f[i] -= gj[i] * Complex(k.s.value() * x2n1);
      }
    }
    RowField moment(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) moment[i] = (f[i] - e[i]) * Complex(xs[i]);
    q = field.partition().cumulate_against_v<Row>(moment);

    RowField s1(n_nodes), s2(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
      const Row s = q[i] + f[i];
      s1[i] = s * ph[i].phi1;
      s2[i] = s * ph[i].phi2;
    }
    const RowField i1 = field.partition().cumulate_against_v<Row>(s1);
    const RowField i2 = field.partition().cumulate_against_v<Row>(s2);
    for (std::size_t i = 0; i < n_nodes; ++i) {
      out.script_g[i] = (i2[i] * ph[i].phi1 - i1[i] * ph[i].phi2) * (l * inv_phi1_minus);
      out.g[i] = (i2[i] * ph[i].dphi1 - i1[i] * ph[i].dphi2) * (l * inv_phi1_minus);
    }
  }

  for (std::size_t i = 0; i < n_nodes; ++i)
    out.d_next[i] = q[i] + out.g[i] * Complex(xs[i]) - out.script_g[i];

  state.g.push_back(out.g);
  state.script_g.push_back(out.script_g);
  state.d.push_back(out.d_next);
  return out;
}

Mat2C LaurentExpansion::evaluate(Complex k, int upto) const {
  Mat2C sum{};
  for (int m = order_max() < upto ? order_max() : upto; m >= order_min; --m) {
    sum += at(m) * std::pow(k, m);
  }
  return sum;
}

LaurentExpansion laurent_expansion(const ZeroEnergyField& field, int m_max) {
  if (m_max < 1) throw InvalidInput("Laurent order must be >= 1");
  if (m_max > kMaxLaurentOrder)
    throw InvalidInput("Laurent order above " + std::to_string(kMaxLaurentOrder) +
                       " is not supported");
  const StructuralConstants sc = structural_constants();
  RecursionState state = initial_state(field);
  LaurentExpansion out;
  out.ell = field.ell();
  for (int m = -1; m <= m_max; ++m) {
    recursion_step(m, state, field);
    const Row g = state.g.back().back();
    const Row d = state.d[static_cast<std::size_t>(m + 1)].back();
    out.coeffs.push_back((sc.K * g.as_matrix() - kI * (sc.KT * d.as_matrix())) * Complex(0.5));
  }
  return out;
}

std::string to_string(Branch b) { return b == Branch::generic ? "generic" : "resonant"; }

ResonanceVerdict classify_resonance(const LowEnergyCoefficients& c, double tau) {
  if (!(tau > 0.0)) throw InvalidInput("tau must be positive");
  const double scale = std::max({1.0, std::abs(c.a1), std::abs(c.b2)});
  const double margin = std::abs(c.b1) / scale;
  return {margin < tau, margin};
}

AmplitudeSeries amplitude_series(const LowEnergyCoefficients& c, int order, double tau) {
  if (order < 0) throw InvalidInput("series order must be >= 0");
  const ResonanceVerdict rv = classify_resonance(c, tau);
  AmplitudeSeries s;
  s.ell = c.ell;
  s.truncation_order = order;
  const Complex a1 = c.a1, a2 = c.a2, b1 = c.b1, b2 = c.b2;
  if (!rv.resonant) {
    if (order > 3) throw InvalidInput("generic-branch series is available through order 3");
    if (order == 3 && !c.g1) throw InvalidInput("order-3 transmission term needs g1");
    s.branch = Branch::generic;
    s.ill_conditioned = rv.margin < 10.0 * tau;
    const std::vector<Complex> rl{-1.0, -2.0 * kI * b2 / b1, 2.0 * (b2 * b2 + 1.0) / (b1 * b1)};
    const std::vector<Complex> rr{-1.0, -2.0 * kI * a1 / b1, 2.0 * (a1 * a1 + 1.0) / (b1 * b1)};
    std::vector<Complex> t{0.0, -2.0 * kI / b1, 2.0 * (a1 + b2) / (b1 * b1)};
    if (order == 3) {
      const Complex g1 = *c.g1;
      t.push_back(2.0 * kI * (a1 * a1 + b2 * b2 + a1 * b2 - b1 * g1 + 1.0) / (b1 * b1 * b1));
    }
    const std::size_t nr = static_cast<std::size_t>(std::min(order, 2)) + 1;
    s.rl.assign(rl.begin(), rl.begin() + static_cast<long>(nr));
    s.rr.assign(rr.begin(), rr.begin() + static_cast<long>(nr));
    s.t.assign(t.begin(), t.begin() + order + 1);
    return s;
  }

  if (order > 1) throw InvalidInput("resonant-branch series is available through order 1");
  if (std::abs(b2) < tau)
    throw ContradictionError("b1 and b2 both vanish, contradicting a1 b2 - a2 b1 = 1");
  const Complex den = b2 * b2 + 1.0;
  if (std::abs(den) < tau)
    throw SpectralSingularity("b2^2 + 1 vanishes: zero-energy spectral singularity");
  if (order == 1 && !c.g1) throw InvalidInput("resonant-branch order-1 terms need g1");
  s.branch = Branch::resonant;
  s.rl = {(b2 * b2 - 1.0) / den};
  s.rr = {-(b2 * b2 - 1.0) / den};
  s.t = {2.0 * b2 / den};
  if (order == 1) {
    const Complex g1 = *c.g1;
    s.rl.push_back(2.0 * kI * b2 * (b2 * b2 * g1 - a2) / (den * den));
    s.rr.push_back(2.0 * kI * b2 * (g1 - a2 * b2 * b2) / (den * den));
    s.t.push_back(2.0 * kI * b2 * b2 * (a2 + g1) / (den * den));
  }
  return s;
}

std::vector<Mat2C> cauchy_coefficients(const PotentialSpec& spec, SupportWindow window, int m_lo,
                                       int m_hi, double radius, int nodes,
                                       const OdeTolerances& tol) {
  if (!(radius > 0.0) || nodes < 4 || m_hi < m_lo)
    throw InvalidInput("contour needs radius > 0, >= 4 nodes and m_lo <= m_hi");
  if (spec.tail && !(radius < spec.tail->mu))
    throw InvalidInput("contour radius must stay inside the strip Im k > -mu");
  std::vector<Mat2C> out(static_cast<std::size_t>(m_hi - m_lo + 1));
  for (int j = 0; j < nodes; ++j) {
    const Complex k = std::polar(radius, 2.0 * M_PI * j / nodes);
    const Mat2C m = transfer_matrix(spec, k, window, tol).m;
    for (int q = m_lo; q <= m_hi; ++q)
      out[static_cast<std::size_t>(q - m_lo)] += m * (std::pow(k, -q) / static_cast<double>(nodes));
  }
  return out;
}

Complex sum_series(const std::vector<Complex>& coeffs, Complex k, double ell) {
  Complex sum{};
  const Complex u = k * ell;
  for (std::size_t n = coeffs.size(); n-- > 0;) sum = sum * u + coeffs[n];
  return sum;
}

}  // namespace lowscat
