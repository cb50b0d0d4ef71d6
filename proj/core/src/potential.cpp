#include "lowscat/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <json.hpp>

namespace lowscat {

using nlohmann::json;

namespace {

bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// ---- parsing helpers -------------------------------------------------------

void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ParseError(path + "/" + it.key(), "unknown field");
  }
}

const json& member(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "/" + key, "missing field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double d = j.get<double>();
  if (!std::isfinite(d)) throw ParseError(path, "expected a finite number");
  return d;
}

Complex complex_value(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected [re, im]");
  return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

PotentialTerm parse_term(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1)
    throw ParseError(path, "term must have exactly one of delta, piecewise, sampled");
  const std::string key = j.begin().key();
  const json& body = j.begin().value();
  const std::string bpath = path + "/" + key;
  if (key == "delta") {
    require_keys(body, bpath, {"strength", "center"});
    return DeltaTerm{complex_value(member(body, bpath, "strength"), bpath + "/strength"),
                     number(member(body, bpath, "center"), bpath + "/center")};
  }
  if (key == "piecewise") {
    if (!body.is_array() || body.empty()) throw ParseError(bpath, "expected a non-empty array");
    PiecewiseConstantTerm t;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const std::string spath = bpath + "/" + std::to_string(i);
      require_keys(body[i], spath, {"xlo", "xhi", "value"});
      t.segments.push_back({number(member(body[i], spath, "xlo"), spath + "/xlo"),
                            number(member(body[i], spath, "xhi"), spath + "/xhi"),
                            complex_value(member(body[i], spath, "value"), spath + "/value")});
    }
    return t;
  }
  if (key == "sampled") {
    require_keys(body, bpath, {"x", "v"});
    const json& xs = member(body, bpath, "x");
    const json& vs = member(body, bpath, "v");
    if (!xs.is_array() || !vs.is_array()) throw ParseError(bpath, "x and v must be arrays");
    SampledTerm t;
    for (std::size_t i = 0; i < xs.size(); ++i)
      t.grid.nodes.push_back(number(xs[i], bpath + "/x/" + std::to_string(i)));
    for (std::size_t i = 0; i < vs.size(); ++i)
      t.grid.values.push_back(complex_value(vs[i], bpath + "/v/" + std::to_string(i)));
    return t;
  }
  throw ParseError(bpath, "unknown term kind");
}

Complex interpolate(const Grid& g, std::size_t i, double x) {
  const double t = (x - g.nodes[i]) / (g.nodes[i + 1] - g.nodes[i]);
  return g.values[i] * (1.0 - t) + g.values[i + 1] * t;
}

Complex sampled_at(const Grid& g, double x) {
  if (x < g.nodes.front() || x > g.nodes.back()) return 0.0;
  auto it = std::upper_bound(g.nodes.begin(), g.nodes.end(), x);
  std::size_t i = static_cast<std::size_t>(it - g.nodes.begin());
  if (i == g.nodes.size()) return g.values.back();
  return interpolate(g, i - 1, x);
}

bool sampled_unbounded(const SampledTerm& s) {
  return s.grid.values.front() != Complex{} || s.grid.values.back() != Complex{};
}

}  // namespace

// ---- PotentialSpec ---------------------------------------------------------

void PotentialSpec::validate() const {
  if (!(ell > 0.0) || !std::isfinite(ell)) throw InvalidInput("ell must be positive and finite");
  if (terms.empty()) throw InvalidInput("potential needs at least one term");
  if (tail && (!(tail->mu > 0.0) || !(tail->C > 0.0)))
    throw InvalidInput("tail bound needs mu > 0 and C > 0");
  for (const auto& term : terms) {
    std::visit(Overloaded{
                   [](const DeltaTerm& d) {
                     if (!std::isfinite(d.center)) throw InvalidInput("delta center must be finite");
                     if (!is_finite(d.strength)) throw InvalidInput("delta strength must be finite");
                   },
                   [](const PiecewiseConstantTerm& p) {
                     if (p.segments.empty()) throw InvalidInput("piecewise term has no segments");
                     std::vector<Segment> s = p.segments;
                     for (const auto& seg : s) {
                       if (!(seg.x_lo < seg.x_hi))
                         throw InvalidInput("segment needs x_lo < x_hi");
                       if (!is_finite(seg.value)) throw InvalidInput("segment value must be finite");
                     }
                     std::sort(s.begin(), s.end(),
                               [](const Segment& a, const Segment& b) { return a.x_lo < b.x_lo; });
                     for (std::size_t i = 1; i < s.size(); ++i)
                       if (s[i].x_lo < s[i - 1].x_hi) throw InvalidInput("segments overlap");
                   },
                   [](const SampledTerm& s) {
                     if (s.grid.nodes.size() < 2) throw InvalidInput("sampled term needs >= 2 samples");
                     s.grid.validate();
                     for (Complex c : s.grid.values)
                       if (!is_finite(c)) throw InvalidInput("sampled values must be finite");
                   }},
               term);
  }
}

bool PotentialSpec::has_deltas() const {
  return std::any_of(terms.begin(), terms.end(),
                     [](const PotentialTerm& t) { return std::holds_alternative<DeltaTerm>(t); });
}

bool PotentialSpec::is_real() const {
  for (const auto& term : terms) {
    const bool real = std::visit(
        Overloaded{[](const DeltaTerm& d) { return d.strength.imag() == 0.0; },
                   [](const PiecewiseConstantTerm& p) {
                     return std::all_of(p.segments.begin(), p.segments.end(),
                                        [](const Segment& s) { return s.value.imag() == 0.0; });
                   },
                   [](const SampledTerm& s) {
                     return std::all_of(s.grid.values.begin(), s.grid.values.end(),
                                        [](Complex c) { return c.imag() == 0.0; });
                   }},
        term);
    if (!real) return false;
  }
  return true;
}

PotentialSpec parse_potential(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  require_keys(root, "", {"ell", "tail", "terms"});
  PotentialSpec spec;
  spec.ell = number(member(root, "", "ell"), "/ell");
  if (!(spec.ell > 0.0)) throw ParseError("/ell", "ell must be positive");
  if (auto it = root.find("tail"); it != root.end()) {
    require_keys(*it, "/tail", {"mu", "C"});
    spec.tail = TailBound{number(member(*it, "/tail", "mu"), "/tail/mu"),
                          number(member(*it, "/tail", "C"), "/tail/C")};
    if (!(spec.tail->mu > 0.0)) throw ParseError("/tail/mu", "mu must be positive");
    if (!(spec.tail->C > 0.0)) throw ParseError("/tail/C", "C must be positive");
  }
  const json& terms = member(root, "", "terms");
  if (!terms.is_array() || terms.empty()) throw ParseError("/terms", "expected a non-empty array");
  for (std::size_t i = 0; i < terms.size(); ++i)
    spec.terms.push_back(parse_term(terms[i], "/terms/" + std::to_string(i)));
  for (std::size_t i = 0; i < spec.terms.size(); ++i) {
    try {
      PotentialSpec one{{spec.terms[i]}, spec.ell, spec.tail};
      one.validate();
    } catch (const InvalidInput& e) {
      throw ParseError("/terms/" + std::to_string(i), e.what());
    }
  }
  return spec;
}

std::string serialize_potential(const PotentialSpec& spec) {
  json root;
  root["ell"] = spec.ell;
  if (spec.tail) root["tail"] = {{"mu", spec.tail->mu}, {"C", spec.tail->C}};
  json terms = json::array();
  for (const auto& term : spec.terms) {
    terms.push_back(std::visit(
        Overloaded{[](const DeltaTerm& d) {
                     return json{{"delta", {{"strength", complex_json(d.strength)},
                                            {"center", d.center}}}};
                   },
                   [](const PiecewiseConstantTerm& p) {
                     json segs = json::array();
                     for (const auto& s : p.segments)
                       segs.push_back({{"xlo", s.x_lo}, {"xhi", s.x_hi},
                                       {"value", complex_json(s.value)}});
                     return json{{"piecewise", segs}};
                   },
                   [](const SampledTerm& s) {
                     json vs = json::array();
                     for (Complex c : s.grid.values) vs.push_back(complex_json(c));
                     return json{{"sampled", {{"x", s.grid.nodes}, {"v", vs}}}};
                   }},
        term));
  }
  root["terms"] = terms;
  return root.dump();
}

Complex evaluate(const PotentialSpec& spec, double x) {
  Complex sum{};
  for (const auto& term : spec.terms) {
    if (const auto* p = std::get_if<PiecewiseConstantTerm>(&term)) {
      for (const auto& s : p->segments)
        if (x >= s.x_lo && x <= s.x_hi) sum += s.value;
    } else if (const auto* s = std::get_if<SampledTerm>(&term)) {
      sum += sampled_at(s->grid, x);
    }
  }
  return sum;
}

SupportWindow support_hull(const PotentialSpec& spec) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& term : spec.terms) {
    std::visit(Overloaded{[&](const DeltaTerm& d) {
                            lo = std::min(lo, d.center);
                            hi = std::max(hi, d.center);
                          },
                          [&](const PiecewiseConstantTerm& p) {
                            for (const auto& s : p.segments) {
                              lo = std::min(lo, s.x_lo);
                              hi = std::max(hi, s.x_hi);
                            }
                          },
                          [&](const SampledTerm& s) {
                            lo = std::min(lo, s.grid.nodes.front());
                            hi = std::max(hi, s.grid.nodes.back());
                          }},
               term);
  }
  if (!(lo <= hi)) throw InvalidInput("potential has no terms");
  return {lo, hi};
}

SupportWindow truncate(const PotentialSpec& spec, double eps_tail, int max_order) {
  if (!(eps_tail > 0.0)) throw InvalidInput("eps_tail must be positive");
  if (max_order < 0) throw InvalidInput("max_order must be non-negative");
  spec.validate();

  SupportWindow w = support_hull(spec);
  const bool unbounded = std::any_of(spec.terms.begin(), spec.terms.end(), [](const auto& t) {
    const auto* s = std::get_if<SampledTerm>(&t);
    return s && sampled_unbounded(*s);
  });
  if (unbounded && !spec.tail)
    throw ConfigurationError(
        "sampled term does not decay to zero at its ends; tail metadata {mu, C} is required");

  if (spec.tail) {
    const double mu = spec.tail->mu;
    const double C = spec.tail->C;
    const double p = 2.0 * max_order + 1.0;
    auto weighted = [&](double x) { return C * std::exp(-mu * x) * std::pow(1.0 + x, p); };
    double lo = std::max(0.0, p / mu - 1.0);  // weighted bound decreases beyond this
    double bound = lo;
    if (weighted(lo) >= eps_tail) {
      double hi = lo + 1.0;
      while (weighted(hi) >= eps_tail) hi = lo + 2.0 * (hi - lo);
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (weighted(mid) >= eps_tail ? lo : hi) = mid;
      }
      bound = hi;
    }
    const SupportWindow clipped{std::max(w.x_minus, -bound), std::min(w.x_plus, bound)};
    if (clipped.x_minus < clipped.x_plus) w = clipped;
  }
  if (w.x_minus == w.x_plus) {
    w.x_minus -= 0.5 * spec.ell;
    w.x_plus += 0.5 * spec.ell;
  }
  return w;
}

PotentialSpec make_barrier(Complex z, double a, double L, double ell) {
  if (!(L > 0.0)) throw InvalidInput("barrier width must be positive");
  PotentialSpec s;
  s.ell = ell;
  s.terms.push_back(PiecewiseConstantTerm{{Segment{a, a + L, z}}});
  s.validate();
  return s;
}

PotentialSpec make_delta(Complex z, double a, double ell) {
  PotentialSpec s;
  s.ell = ell;
  s.terms.push_back(DeltaTerm{z, a});
  s.validate();
  return s;
}

// ---- Partition -------------------------------------------------------------

Partition::Partition(const PotentialSpec& spec, SupportWindow window, const GridOptions& opts,
                     double k_scale)
    : spec_(spec), window_(window) {
  if (!(window.x_minus < window.x_plus))
    throw InvalidInput("support window needs x_minus < x_plus");
  const double lo = window.x_minus;
  const double hi = window.x_plus;
  auto inside = [&](double x) { return x > lo && x < hi; };

  std::set<double> breaks{lo, hi};
  std::vector<std::pair<double, Complex>> deltas;
  for (const auto& term : spec.terms) {
    std::visit(Overloaded{[&](const DeltaTerm& d) {
                            if (d.center >= lo && d.center <= hi) {
                              breaks.insert(d.center);
                              deltas.emplace_back(d.center, d.strength);
                            }
                          },
                          [&](const PiecewiseConstantTerm& p) {
                            for (const auto& s : p.segments) {
                              if (inside(s.x_lo)) breaks.insert(s.x_lo);
                              if (inside(s.x_hi)) breaks.insert(s.x_hi);
                            }
                          },
                          [&](const SampledTerm& s) {
                            for (double x : s.grid.nodes)
                              if (inside(x)) breaks.insert(x);
                          }},
               term);
  }

  auto delta_at = [&](double x) {
    Complex z{};
    for (const auto& [c, s] : deltas)
      if (c == x) z += s;
    return z;
  };

  std::vector<std::pair<double, double>> spans;
  const Complex z_lo = delta_at(lo);
  const Complex z_hi = delta_at(hi);
  if (z_lo != Complex{}) spans.emplace_back(lo, lo);
  for (auto it = breaks.begin(); std::next(it) != breaks.end(); ++it)
    spans.emplace_back(*it, *std::next(it));
  if (z_hi != Complex{}) spans.emplace_back(hi, hi);

  const double rate_floor = opts.min_intervals / window.width();
  for (std::size_t p = 0; p < spans.size(); ++p) {
    const auto [a, b] = spans[p];
    Panel pn{a, b, true, x_.size(), x_.size()};

    // Active pieces of the smooth potential on this panel.
    Complex constant{};
    std::vector<std::size_t> samples;
    if (b > a) {
      const double mid = 0.5 * (a + b);
      for (std::size_t t = 0; t < spec.terms.size(); ++t) {
        if (const auto* pc = std::get_if<PiecewiseConstantTerm>(&spec.terms[t])) {
          for (const auto& s : pc->segments)
            if (s.x_lo <= a && s.x_hi >= b) constant += s.value;
        } else if (const auto* st = std::get_if<SampledTerm>(&spec.terms[t])) {
          if (st->grid.nodes.front() <= a && st->grid.nodes.back() >= b) {
            auto it = std::upper_bound(st->grid.nodes.begin(), st->grid.nodes.end(), mid);
            const std::size_t i = static_cast<std::size_t>(it - st->grid.nodes.begin()) - 1;
            if (st->grid.values[i] != Complex{} || st->grid.values[i + 1] != Complex{})
              samples.push_back(t);
          }
        }
      }
    }
    panel_constant_.push_back(constant);
    panel_samples_.push_back(samples);
    pn.vanishes = constant == Complex{} && samples.empty();

    std::size_t n = 0;
    if (b > a) {
      if (pn.vanishes) {
        n = 1;
      } else {
        const std::size_t self = panels_.size();
        panels_.push_back(pn);  // potential() needs the panel registered
        double vmax = 0.0;
        for (int j = 0; j <= 4; ++j) vmax = std::max(vmax, std::abs(potential(self, a + (b - a) * j / 4.0)));
        panels_.pop_back();
        const double rate =
            std::max({rate_floor, opts.density * std::sqrt(vmax), opts.density * std::abs(k_scale)});
        const double want = std::ceil((b - a) * rate);
        n = static_cast<std::size_t>(
            std::clamp(want, static_cast<double>(opts.min_panel_intervals),
                       static_cast<double>(opts.max_panel_intervals)));
      }
    }
    pn.first = x_.size();
    for (std::size_t i = 0; i <= n; ++i) {
      const double x = (i == n) ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
      x_.push_back(x);
    }
    pn.last = x_.size() - 1;
    panels_.push_back(pn);
    for (std::size_t i = pn.first; i <= pn.last; ++i)
      v_.push_back(pn.vanishes ? Complex{} : potential(panels_.size() - 1, x_[i]));
  }

  for (std::size_t p = 0; p + 1 < panels_.size(); ++p) joins_.push_back(delta_at(panels_[p].hi));
}

Complex Partition::potential(std::size_t p, double x) const {
  const Panel& pn = panels_[p];
  Complex v = panel_constant_[p];
  const double mid = 0.5 * (pn.lo + pn.hi);
  for (std::size_t t : panel_samples_[p]) {
    const Grid& g = std::get<SampledTerm>(spec_.terms[t]).grid;
    auto it = std::upper_bound(g.nodes.begin(), g.nodes.end(), mid);
    const std::size_t i = static_cast<std::size_t>(it - g.nodes.begin()) - 1;
    v += interpolate(g, i, x);
  }
  return v;
}

std::size_t Partition::locate(double x) const {
  for (std::size_t p = 0; p < panels_.size(); ++p)
    if (x <= panels_[p].hi) return p;
  return panels_.size() - 1;
}

}  // namespace lowscat
