#include "lowscat/properties.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "lowscat/halfline.hpp"
#include "lowscat/lowenergy.hpp"
#include "lowscat/oracles.hpp"
#include "lowscat/propagate.hpp"
#include "lowscat/zeroenergy.hpp"

namespace lowscat {

double Rng::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

Complex Rng::disk(double radius) {
  const double r = radius * std::sqrt(uniform());
  return std::polar(r, uniform(0.0, 2.0 * M_PI));
}

double Rng::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

namespace {

Complex random_value(Rng& rng, double vmax, bool real) {
  if (real) return rng.uniform(-vmax, vmax);
  return rng.disk(vmax);
}

std::vector<double> sorted_points(Rng& rng, int n, double lo, double hi) {
  std::vector<double> p(static_cast<std::size_t>(n));
  for (auto& x : p) x = rng.uniform(lo, hi);
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

PotentialSpec random_piecewise(Rng& rng, double lo, double hi, double vmax, bool real, double ell) {
  const int n = rng.integer(1, 3);
  const std::vector<double> cuts = sorted_points(rng, 2 * n, lo, hi);
  PiecewiseConstantTerm t;
  for (int i = 0; i < n; ++i) {
    const double a = cuts[static_cast<std::size_t>(2 * i)];
    double b = cuts[static_cast<std::size_t>(2 * i + 1)];
    if (!(b > a)) b = a + 1e-3;
    t.segments.push_back({a, b, random_value(rng, vmax, real)});
  }
  PotentialSpec s;
  s.ell = ell;
  s.terms.push_back(t);
  return s;
}

PotentialSpec random_delta_train(Rng& rng, double lo, double hi, double zmax, bool real,
                                 double ell) {
  PotentialSpec s;
  s.ell = ell;
  const int n = rng.integer(2, 4);
  for (int i = 0; i < n; ++i) s.terms.push_back(DeltaTerm{random_value(rng, zmax, real), rng.uniform(lo, hi)});
  return s;
}

PotentialSpec random_mixed(Rng& rng, double lo, double hi, double vmax, bool real, double ell) {
  PotentialSpec s = random_piecewise(rng, lo, hi, vmax, real, ell);
  const int nd = rng.integer(0, 2);
  for (int i = 0; i < nd; ++i)
    s.terms.push_back(DeltaTerm{random_value(rng, 0.5 * vmax, real), rng.uniform(lo, hi)});
  if (rng.uniform() < 0.5) {
    const double c = rng.uniform(lo, hi);
    const double w = rng.uniform(0.1, 0.5) * (hi - lo);
    const Complex amp = random_value(rng, vmax, real);
    SampledTerm st;
    for (int i = 0; i <= 8; ++i) {
      const double x = c - w + 2.0 * w * i / 8.0;
      st.grid.nodes.push_back(x);
      st.grid.values.push_back(i == 0 || i == 8 ? Complex{} : amp * std::pow(std::sin(M_PI * i / 8.0), 2));
    }
    s.terms.push_back(st);
  }
  return s;
}

double loglog_slope(const std::vector<double>& k, const std::vector<double>& err) {
  if (k.size() != err.size() || k.size() < 2) throw InvalidInput("slope fit needs >= 2 points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    mx += std::log(k[i]) / n;
    my += std::log(err[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double dx = std::log(k[i]) - mx;
    sxy += dx * (std::log(err[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

int first_monotonicity_violation(const std::vector<double>& err, int from, double floor) {
  for (std::size_t n = static_cast<std::size_t>(std::max(from, 0)); n + 1 < err.size(); ++n)
    if (err[n + 1] > floor && err[n + 1] > err[n]) return static_cast<int>(n + 1);
  return -1;
}

namespace {

using Clock = std::chrono::steady_clock;

class Checker {
 public:
  explicit Checker(PropertyReport& r) : r_(r) {}
  void set_case(int c) { case_ = c; }
  // Records value <= limit.
  void le(const char* what, double value, double limit) {
    ++r_.checks;
    if (value <= limit) return;
    fail(what, value, limit);
  }
  void truth(const char* what, bool ok) {
    ++r_.checks;
    if (!ok) fail(what, 0.0, 0.0);
  }
  void error(const std::string& what) {
    ++r_.checks;
    ++r_.failures;
    if (r_.first_failure.empty())
      r_.first_failure = "case " + std::to_string(case_) + ": exception " + what;
  }

 private:
  void fail(const char* what, double value, double limit) {
    ++r_.failures;
    if (!r_.first_failure.empty()) return;
    std::ostringstream os;
    os << "case " << case_ << ": " << what << " value " << value << " limit " << limit;
    r_.first_failure = os.str();
  }
  PropertyReport& r_;
  int case_ = 0;
};

template <class Body>
PropertyReport run_cases(const char* module, std::uint64_t seed, int cases, Body&& body) {
  PropertyReport r;
  r.module = module;
  const auto t0 = Clock::now();
  Rng rng(seed);
  Checker chk(r);
  for (int c = 0; c < cases; ++c) {
    chk.set_case(c);
    try {
      body(rng, chk);
    } catch (const std::exception& e) {
      chk.error(e.what());
    }
    ++r.cases;
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

Mat2C random_matrix(Rng& rng) { return {rng.disk(1), rng.disk(1), rng.disk(1), rng.disk(1)}; }

SupportWindow window_for(const PotentialSpec& s, const Config& cfg) {
  return truncate(s, cfg.eps_tail, cfg.max_order);
}

// Power-series quotient num/den (den[0] != 0), first n coefficients.
std::vector<Complex> series_div(const std::vector<Complex>& num, const std::vector<Complex>& den,
                                std::size_t n) {
  std::vector<Complex> q(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc = j < num.size() ? num[j] : 0.0;
    for (std::size_t i = 1; i <= j && i < den.size(); ++i) acc -= den[i] * q[j - i];
    q[j] = acc / den[0];
  }
  return q;
}

}  // namespace

PropertyReport check_numerics_properties(std::uint64_t seed, int cases, const Config& cfg) {
  return run_cases("numerics", seed, cases, [&](Rng& rng, Checker& chk) {
    const Mat2C a = random_matrix(rng), b = random_matrix(rng);
    const double scale = std::max(1.0, a.norm() * a.norm() * b.norm() * b.norm());
    chk.le("det(AB) - det A det B", std::abs((a * b).det() - a.det() * b.det()), 1e-14 * scale);

    // Traceless rhs [[p, q], [r, -p]] with smooth random coefficients.
    const Complex p0 = rng.disk(2), p1 = rng.disk(2), q0 = rng.disk(2), r0 = rng.disk(2);
    const double w = rng.uniform(0.5, 6.0);
    auto rhs = [&](double x) {
      const Complex p = p0 + p1 * std::sin(w * x);
      return Mat2C{p, q0 * std::cos(w * x), r0, -p};
    };
    const Mat2C u = integrate_linear_ode(rhs, 0.0, 1.0, Mat2C::identity(), cfg.ode);
    chk.le("|det U - 1| (traceless ODE)", std::abs(u.det() - 1.0), 10.0 * cfg.ode.rtol * std::max(1.0, u.norm() * u.norm() / 2.0));

    // Affine integrand on a random grid with uniform runs mixed in.
    Grid g;
    double x = rng.uniform(-3, 3);
    const int n = rng.integer(2, 40);
    const double h = rng.uniform(0.01, 0.3);
    for (int i = 0; i < n; ++i) {
      g.nodes.push_back(x);
      x += rng.uniform() < 0.5 ? h : rng.uniform(0.01, 0.5);
    }
    const Complex c0 = rng.disk(3), c1 = rng.disk(3);
    for (double xi : g.nodes) g.values.push_back(c0 + c1 * xi);
    const double x0 = g.nodes.front(), x1 = g.nodes.back();
    const Complex exact = c0 * (x1 - x0) + c1 * (x1 * x1 - x0 * x0) / 2.0;
    chk.le("quad of affine integrand", std::abs(quad(g).value - exact),
           1e-12 * std::max(1.0, std::abs(exact)));
  });
}

PropertyReport check_potential_properties(std::uint64_t seed, int cases, const Config&) {
  return run_cases("potential", seed, cases, [&](Rng& rng, Checker& chk) {
    const PotentialSpec a = random_mixed(rng, -2, 2, 3, false, 1.0);
    const PotentialSpec b = random_mixed(rng, -2, 2, 3, false, 1.0);
    PotentialSpec u = a;
    u.terms.insert(u.terms.end(), b.terms.begin(), b.terms.end());
    for (int j = 0; j < 4; ++j) {
      const double x = rng.uniform(-2.5, 2.5);
      const Complex ea = evaluate(a, x), eb = evaluate(b, x);
      // Sums of at most a handful of terms: allow a few ulps of reassociation.
      chk.le("evaluate linearity", std::abs(evaluate(u, x) - (ea + eb)),
             8e-16 * (std::abs(ea) + std::abs(eb)));
    }

    PotentialSpec tail = random_piecewise(rng, -1, 1, 2, false, 1.0);
    SampledTerm st;
    for (int i = 0; i <= 10; ++i) {
      st.grid.nodes.push_back(-1.0 + 0.2 * i);
      st.grid.values.push_back(rng.disk(1.0) + 0.5);
    }
    tail.terms.push_back(st);
    tail.tail = TailBound{rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)};
    const double e1 = rng.log_uniform(1e-14, 1e-4);
    const double e2 = e1 * rng.uniform(1e-3, 1.0);
    const int order = rng.integer(0, 4);
    const SupportWindow w1 = truncate(tail, e1, order), w2 = truncate(tail, e2, order);
    chk.truth("truncate window grows as eps_tail shrinks",
              w2.x_minus <= w1.x_minus && w2.x_plus >= w1.x_plus);

    chk.truth("parse(serialize(spec)) round trip", parse_potential(serialize_potential(a)) == a);
    chk.truth("round trip with tail", parse_potential(serialize_potential(tail)) == tail);
  });
}

PropertyReport check_propagate_properties(std::uint64_t seed, int cases, const Config& cfg) {
  return run_cases("propagate", seed, cases, [&](Rng& rng, Checker& chk) {
    const bool real = rng.uniform() < 0.5;
    const PotentialSpec s = random_mixed(rng, -1.5, 1.5, 3, real, 1.0);
    const SupportWindow w = window_for(s, cfg);
    const double kr = rng.uniform(0.2, 4.0);
    const Complex k = rng.uniform() < 0.5 ? Complex(kr) : Complex(kr, rng.uniform(0.0, 1.0));
    const Mat2C m = transfer_matrix(s, k, w, cfg.ode).m;
    const double mn = std::max(1.0, m.norm());
    chk.le("|det M - 1|", std::abs(m.det() - 1.0), 10.0 * cfg.ode.rtol * mn * mn);

    const double c = rng.uniform(w.x_minus, w.x_plus);
    const Mat2C split = evolution(s, k, c, w.x_plus, cfg.ode) * evolution(s, k, w.x_minus, c, cfg.ode);
    chk.le("composition U(x+,c)U(c,x-) = M", (split - m).norm(), 1e-8 * mn);

    if (real && k.imag() == 0.0) {
      chk.le("M11 = conj M22", std::abs(m.m11 - std::conj(m.m22)), 1e-8 * mn);
      chk.le("M12 = conj M21", std::abs(m.m12 - std::conj(m.m21)), 1e-8 * mn);
    }

    // Dyson remainder bound on a barrier with |z| L^2 <= 4.
    const double L = rng.uniform(0.5, 1.5);
    const Complex z = rng.disk(4.0 / (L * L));
    const PotentialSpec bar = make_barrier(z, rng.uniform(-1, 1), L, L);
    const SupportWindow bw = window_for(bar, cfg);
    const double kb = rng.uniform(0.5, 3.0);
    const int order = 10;
    const DysonResult dy = dyson_transfer(bar, kb, bw, order, cfg.grid);
    const Mat2C mb = transfer_matrix(bar, kb, bw, kTightOde).m;
    const double ih = dy.h_norm_integral;
    double prev_ratio = INFINITY;
    for (int n = 1; n <= order; ++n) {
      const double bound = std::pow(ih, n + 1) / std::tgamma(n + 2.0) * std::exp(ih);
      chk.le("Dyson error within remainder bound",
             (dy.partial_sums[static_cast<std::size_t>(n)] - mb).norm(), bound + 1e-9);
      const double ratio = ih / (n + 2.0);
      chk.truth("remainder bound ratio decreasing", ratio < prev_ratio);
      prev_ratio = ratio;
    }
  });
}

PropertyReport check_zeroenergy_properties(std::uint64_t seed, int cases, const Config& cfg) {
  return run_cases("zeroenergy", seed, cases, [&](Rng& rng, Checker& chk) {
    const double ell = rng.log_uniform(0.3, 3.0);
    const PotentialSpec s = random_mixed(rng, -1.5, 1.5, 3, rng.uniform() < 0.5, ell);
    const SupportWindow w = window_for(s, cfg);
    const ZeroEnergyField f = solve_phi(s, w, cfg.ode, cfg.grid);
    chk.le("Wronskian residual", f.wronskian_residual(), 10.0 * cfg.ode.rtol);
    const LowEnergyCoefficients c = full_coefficients(f);
    const double cs = std::max({1.0, std::abs(c.a1 * c.b2), std::abs(c.a2 * c.b1)});
    chk.le("a1 b2 - a2 b1 = 1", std::abs(c.wronskian() - 1.0), 1e-9 * cs);
    chk.le("det M0 = 1", std::abs(m0_ode(f).m0.det() - 1.0), 1e-9 * cs);

    // Refinement: doubled node density.
    GridOptions fine = cfg.grid;
    fine.min_intervals *= 2;
    fine.density *= 2.0;
    const ZeroEnergyField f2 = solve_phi(s, w, cfg.ode, fine);
    chk.le("varsigma(x+) under refinement", rel(varsigma_grid(f2).back(), varsigma_grid(f).back()), 1e-8);
    chk.le("g1 under refinement", rel(g1_coefficient(f2), *c.g1), 1e-8);

    // ell covariance.
    for (double lam : {0.5, 2.0}) {
      PotentialSpec sl = s;
      sl.ell = ell * lam;
      const LowEnergyCoefficients cl = full_coefficients(solve_phi(sl, w, cfg.ode, cfg.grid));
      chk.le("a1 ell-invariant", rel(cl.a1, c.a1), 1e-10);
      chk.le("b2 ell-invariant", rel(cl.b2, c.b2), 1e-10);
      chk.le("b1 scales with ell", rel(cl.b1, lam * c.b1), 1e-10);
      chk.le("a2 scales with 1/ell", rel(cl.a2, c.a2 / lam), 1e-10);
      chk.le("g1 scales with 1/ell", rel(*cl.g1, *c.g1 / lam), 1e-10);
    }

    // Dyson M0 on a barrier with |z| L^2 <= 4.
    const double L = rng.uniform(0.5, 1.5);
    const PotentialSpec bar = make_barrier(rng.disk(4.0 / (L * L)), rng.uniform(-1, 1), L, L);
    const SupportWindow bw = window_for(bar, cfg);
    const Mat2C m0 = m0_ode(solve_phi(bar, bw, kTightOde, cfg.grid)).m0;
    const ZeroDysonResult dy = m0_dyson(bar, bw, 12, cfg.grid);
    const double floor = 4.0 * (m0_dyson(bar, bw, 12, fine).m0.m0 - dy.m0.m0).norm() + 1e-14;
    std::vector<double> err;
    for (const Mat2C& p : dy.partial_sums) err.push_back((p - m0).norm());
    chk.truth("Dyson M0 error non-increasing beyond order 2",
              first_monotonicity_violation(err, 2, floor) < 0);
  });
}

PropertyReport check_lowenergy_properties(std::uint64_t seed, int cases, const Config& cfg) {
  return run_cases("lowenergy", seed, cases, [&](Rng& rng, Checker& chk) {
    const double ell = rng.log_uniform(0.3, 3.0);
    PotentialSpec s;
    ZeroEnergyField f = [&] {
      for (;;) {
        s = random_mixed(rng, -1.0, 1.0, 3, rng.uniform() < 0.5, ell);
        ZeroEnergyField fld = solve_phi(s, window_for(s, cfg), cfg.ode, cfg.grid);
        if (std::abs(coefficients(fld).b1) > 0.1 * ell) return fld;
      }
    }();
    const SupportWindow w = f.window();
    const LowEnergyCoefficients c = full_coefficients(f);
    const LaurentExpansion lx = laurent_expansion(f, 2);
    const StructuralConstants sc = structural_constants();

    const Mat2C expect_m1 = sc.K * (-kI * c.b1 / (2.0 * ell));
    chk.le("U(-1) = (-i b1 / 2 ell) K", (lx.at(-1) - expect_m1).norm(),
           1e-10 * std::max(1.0, expect_m1.norm()));

    // Ratio formulas re-expanded from the Laurent coefficients.
    std::vector<Complex> A, B, C;
    for (int m = -1; m <= 2; ++m) {
      A.push_back(lx.at(m).m21);
      B.push_back(lx.at(m).m12);
      C.push_back(lx.at(m).m22);
    }
    const std::vector<Complex> rl = series_div(A, C, 3), rr = series_div(B, C, 3);
    const std::vector<Complex> inv = series_div({1.0}, C, 3);
    const AmplitudeSeries as = amplitude_series(c, 3, cfg.tau);
    for (std::size_t n = 0; n < 3; ++n) {
      const double ln = std::pow(ell, static_cast<double>(n));
      chk.le("Rl series vs Laurent", rel(-rl[n] / ln, as.rl[n]), 1e-10 * std::max(1.0, std::abs(as.rl[n])));
      chk.le("Rr series vs Laurent", rel(rr[n] / ln, as.rr[n]), 1e-10 * std::max(1.0, std::abs(as.rr[n])));
      chk.le("T series vs Laurent", rel(inv[n] / (ln * ell), as.t[n + 1]),
             1e-10 * std::max(1.0, std::abs(as.t[n + 1])));
    }

    // ell independence of M(k) coefficients and of physical series terms.
    for (double lam : {0.5, 2.0}) {
      PotentialSpec sl = s;
      sl.ell = ell * lam;
      const ZeroEnergyField fl = solve_phi(sl, w, cfg.ode, cfg.grid);
      const LaurentExpansion ll = laurent_expansion(fl, 2);
      for (int m = -1; m <= 2; ++m)
        chk.le("U(m) ell-independent", (ll.at(m) - lx.at(m)).norm(), 1e-10 * std::max(1.0, lx.at(m).norm()));
      const AmplitudeSeries al = amplitude_series(full_coefficients(fl), 3, cfg.tau);
      for (std::size_t n = 0; n < al.t.size(); ++n) {
        const double f0 = std::pow(ell, static_cast<double>(n)), f1 = std::pow(ell * lam, static_cast<double>(n));
        chk.le("T term ell-independent", rel(al.t[n] * f1, as.t[n] * f0), 1e-10);
        if (n < al.rl.size()) {
          chk.le("Rl term ell-independent", rel(al.rl[n] * f1, as.rl[n] * f0), 1e-10);
          chk.le("Rr term ell-independent", rel(al.rr[n] * f1, as.rr[n] * f0), 1e-10);
        }
      }
    }

    // Resonant barrier: a1 = 1/b2.
    const double L = rng.uniform(0.5, 2.0);
    const int n = rng.integer(1, 3);
    const PotentialSpec rb = make_barrier(-std::pow(M_PI * n / L, 2), rng.uniform(-1, 1), L, L);
    const LowEnergyCoefficients rc = coefficients(solve_phi(rb, window_for(rb, cfg), cfg.ode, cfg.grid));
    const ResonanceVerdict rv = classify_resonance(rc, cfg.tau);
    chk.truth("resonant barrier classified resonant", rv.resonant);
    chk.le("a1 = 1/b2 on the resonant branch", std::abs(rc.a1 * rc.b2 - 1.0), 1e-8);

    // Remainder slope of the three-term expansion on a non-resonant barrier.
    const PotentialSpec nb = make_barrier(rng.uniform(0.5, 3.0) / (L * L) * (rng.uniform() < 0.5 ? 1 : -1),
                                          0.0, L, L);
    const SupportWindow nw = window_for(nb, cfg);
    const LaurentExpansion nl = laurent_expansion(solve_phi(nb, nw, cfg.ode, cfg.grid), 1);
    std::vector<double> ks, errs;
    for (int j = 0; j < 5; ++j) {
      const double k = 1e-3 * std::pow(100.0, j / 4.0) / L;
      ks.push_back(k);
      errs.push_back((transfer_matrix(nb, k, nw, kTightOde).m - nl.evaluate(k, 1)).norm());
    }
    chk.le("-(remainder slope)", -loglog_slope(ks, errs), -1.9);
  });
}

PropertyReport check_halfline_properties(std::uint64_t seed, int cases, const Config& cfg) {
  return run_cases("halfline", seed, cases, [&](Rng& rng, Checker& chk) {
    const double ell = rng.log_uniform(0.5, 2.0);
    const PotentialSpec s = rng.uniform() < 0.5 ? random_piecewise(rng, 0.0, 2.0, 3, true, ell)
                                                : random_delta_train(rng, 0.0, 2.0, 2, true, ell);
    const int kind = rng.integer(0, 2);
    BoundaryCondition bc;
    if (kind == 0) bc = {rng.uniform(0.2, 3.0), 0.0, {}};
    if (kind == 1) bc = {0.0, rng.uniform(0.2, 3.0), {}};
    if (kind == 2) bc = {rng.uniform(-2, 2), rng.uniform(0.2, 2.0) * (rng.uniform() < 0.5 ? 1 : -1), {}};
    const HalfLineProblem hp{s, bc};
    for (int j = 0; j < 3; ++j) {
      const double k = rng.log_uniform(0.05, 5.0);
      chk.le("|R| = 1 (real potential, real k)", std::abs(std::abs(reflection(hp, k, cfg.ode)) - 1.0), 1e-8);
    }

    const Complex alpha = rng.disk(3.0) + 0.1, beta = rng.disk(3.0) + 0.1;
    chk.truth("Dirichlet gamma is exactly 1", gamma({alpha, 0.0, {}}) == Complex(1.0));
    chk.truth("Neumann gamma is exactly -1", gamma({0.0, beta, {}}) == Complex(-1.0));

    // Series remainder slope on non-resonant configurations.
    const SupportWindow w = window_for(s, cfg);
    const LowEnergyCoefficients c = full_coefficients(solve_phi(s, w, cfg.ode, cfg.grid));
    const HalfLineVerdict hv = classify_halfline_resonance(hp, c, cfg.tau);
    // Near a resonance the series radius shrinks with the margin.
    if (hv.margin < 0.1) return;
    const AmplitudeSeries rs = reflection_series(hp, c, cfg.tau);
    const double scale = std::max(w.x_plus, ell);
    std::vector<double> ks, errs;
    for (int j = 0; j < 5; ++j) {
      const double k = 2e-3 * std::pow(10.0, j / 4.0) / scale;
      ks.push_back(k);
      errs.push_back(std::abs(reflection(hp, k, kTightOde) - sum_series(rs.rl, k, ell)));
    }
    chk.le("-(half-line remainder slope)", -loglog_slope(ks, errs), -(rs.truncation_order + 0.9));
  });
}

PropertyReport check_oracles_properties(std::uint64_t seed, int cases, const Config&) {
  return run_cases("oracles", seed, cases, [&](Rng& rng, Checker& chk) {
    const double L = rng.uniform(0.3, 2.0);
    const bool real = rng.uniform() < 0.5;
    const Complex z = real ? Complex(rng.uniform(-8, 8) / (L * L)) : rng.disk(8.0 / (L * L));
    const BarrierParams bp{z, rng.uniform(-1, 1), L, L};
    const double kr = rng.log_uniform(0.02, 5.0) / L;
    const Mat2C m = barrier_transfer(bp, kr);
    const double mn = std::max(1.0, m.norm());
    chk.le("barrier det = 1", std::abs(m.det() - 1.0), 1e-12 * mn * mn);
    if (real) {
      chk.le("real barrier M11 = conj M22", std::abs(m.m11 - std::conj(m.m22)), 1e-12 * mn);
      chk.le("real barrier M12 = conj M21", std::abs(m.m12 - std::conj(m.m21)), 1e-12 * mn);
    }
    const Mat2C mneg = barrier_transfer(bp, -kr);
    chk.le("M11(k) = M22(-k)", std::abs(m.m11 - mneg.m22), 1e-12 * mn);

    const LowEnergyCoefficients c = barrier_lowk(bp);
    const double cs = std::max({1.0, std::abs(c.a1 * c.b2), std::abs(c.a2 * c.b1)});
    chk.le("barrier a1 b2 - a2 b1 = 1", std::abs(c.wronskian() - 1.0), 1e-12 * cs);

    // Both square-root branches give the same even functions.
    const Complex wv = rng.disk(20.0);
    const Complex r = std::sqrt(wv);
    if (std::abs(wv) > 1e-3) {
      chk.le("cosh even in sqrt", rel(cosh_sqrt(wv), std::cosh(-r)), 1e-12);
      chk.le("sinh(r)/r even in sqrt", rel(sinhc_sqrt(wv), std::sinh(-r) / (-r)), 1e-12);
    }
    const Complex ws = std::polar(0.999e-3, rng.uniform(0, 2 * M_PI));
    const Complex rs = std::sqrt(ws);
    chk.le("series branch continuity (cosh)", rel(cosh_sqrt(ws), std::cosh(rs)), 1e-14);
    chk.le("series branch continuity (sinh)", rel(sinhc_sqrt(ws), std::sinh(rs) / rs), 1e-14);

    const DeltaParams dp = DeltaParams::from_phase(rng.uniform(-M_PI, M_PI), rng.uniform(-2, 2),
                                                   rng.log_uniform(0.2, 5.0));
    const DeltaClosedForms d = delta_all(dp, kr);
    chk.le("delta det M = 1", std::abs(d.transfer.det() - 1.0), 1e-12 * std::max(1.0, d.transfer.norm() * d.transfer.norm()));
    chk.le("delta det M0 = 1", std::abs(d.m0.det() - 1.0), 1e-12 * std::max(1.0, d.m0.norm() * d.m0.norm()));
  });
}

std::vector<PropertyReport> check_all_properties(std::uint64_t seed, int cases, const Config& cfg) {
  return {check_numerics_properties(seed + 1, cases, cfg),
          check_potential_properties(seed + 2, cases, cfg),
          check_propagate_properties(seed + 3, cases, cfg),
          check_zeroenergy_properties(seed + 4, cases, cfg),
          check_lowenergy_properties(seed + 5, cases, cfg),
          check_halfline_properties(seed + 6, cases, cfg),
          check_oracles_properties(seed + 7, cases, cfg)};
}

}  // namespace lowscat
