#include "lowscat_cli/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lowscat/halfline.hpp"
#include "lowscat/lowenergy.hpp"
#include "lowscat/propagate.hpp"
#include "lowscat/validate.hpp"
#include "lowscat/zeroenergy.hpp"

namespace lowscat::cli {

using nlohmann::ordered_json;

std::vector<double> KGrid::values() const {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    v.push_back(log ? min * std::pow(max / min, t) : min + (max - min) * t);
  }
  if (count > 1) v.back() = max;
  return v;
}

namespace {

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigurationError("invalid " + what + ": '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ConfigurationError("invalid " + what + ": '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

KGrid parse_k_grid(const std::string& text) {
  const auto p = split(text, ':');
  if (p.size() != 3 && p.size() != 4) throw ConfigurationError("--k expects min:max:count[:log], got '" + text + "'");
  KGrid g;
  g.min = parse_double(p[0], "k min");
  g.max = parse_double(p[1], "k max");
  const double c = parse_double(p[2], "k count");
  if (c != std::floor(c) || c < 1 || c > 1e7) throw ConfigurationError("k count must be a positive integer");
  g.count = static_cast<int>(c);
  if (p.size() == 4) {
    if (p[3] != "log" && p[3] != "lin") throw ConfigurationError("k spacing must be 'log' or 'lin'");
    g.log = p[3] == "log";
  }
  if (!(g.min > 0.0)) throw ConfigurationError("k min must be > 0");
  if (g.max < g.min) throw ConfigurationError("k max must be >= k min");
  if (g.count == 1 && g.max != g.min) throw ConfigurationError("k count 1 needs min == max");
  return g;
}

Complex parse_complex(const std::string& text) {
  const auto p = split(text, ',');
  if (p.size() == 1) return parse_double(p[0], "complex value");
  if (p.size() == 2) return {parse_double(p[0], "real part"), parse_double(p[1], "imaginary part")};
  throw ConfigurationError("expected re,im but got '" + text + "'");
}

namespace {

std::string to_string(Command c) {
  switch (c) {
    case Command::transfer: return "transfer";
    case Command::amplitudes: return "amplitudes";
    case Command::lowenergy: return "lowenergy";
    case Command::zero: return "zero";
    case Command::halfline: return "halfline";
    case Command::validate: return "validate";
  }
  return "?";
}

ordered_json cjson(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json mjson(const Mat2C& m) { return ordered_json::array({cjson(m.m11), cjson(m.m12), cjson(m.m21), cjson(m.m22)}); }

ordered_json series_json(const AmplitudeSeries& s, bool half_line) {
  ordered_json j;
  j["branch"] = lowscat::to_string(s.branch);
  j["ell"] = s.ell;
  j["truncation_order"] = s.truncation_order;
  auto arr = [](const std::vector<Complex>& v) {
    ordered_json a = ordered_json::array();
    for (Complex c : v) a.push_back(cjson(c));
    return a;
  };
  if (half_line) {
    j["r"] = arr(s.rl);
  } else {
    j["rl"] = arr(s.rl);
    j["rr"] = arr(s.rr);
    j["t"] = arr(s.t);
  }
  j["ill_conditioned"] = s.ill_conditioned;
  return j;
}

ordered_json coefficients_json(const LowEnergyCoefficients& c) {
  ordered_json j;
  j["a1"] = cjson(c.a1);
  j["a2"] = cjson(c.a2);
  j["b1"] = cjson(c.b1);
  j["b2"] = cjson(c.b2);
  if (c.g1) j["g1"] = cjson(*c.g1);
  j["ell"] = c.ell;
  j["det_residual"] = std::abs(c.wronskian() - 1.0);
  return j;
}

ordered_json config_json(const RunConfig& rc, const PotentialSpec* spec) {
  const Config& c = rc.tolerances;
  ordered_json j;
  j["command"] = to_string(rc.command);
  j["potential"] = rc.potential_path;
  if (rc.k_grid)
    j["k"] = {{"min", rc.k_grid->min}, {"max", rc.k_grid->max}, {"count", rc.k_grid->count},
              {"spacing", rc.k_grid->log ? "log" : "linear"}};
  j["order"] = rc.order;
  if (spec) j["ell"] = spec->ell;
  if (rc.alpha) j["alpha"] = cjson(*rc.alpha);
  if (rc.beta) j["beta"] = cjson(*rc.beta);
  j["ode_rtol"] = c.ode.rtol;
  j["ode_atol"] = c.ode.atol;
  j["grid_min_intervals"] = c.grid.min_intervals;
  j["grid_density"] = c.grid.density;
  j["grid_min_panel_intervals"] = c.grid.min_panel_intervals;
  j["grid_max_panel_intervals"] = c.grid.max_panel_intervals;
  j["amplitude_atol"] = c.amplitude_atol;
  j["tau"] = c.tau;
  j["eps_tail"] = c.eps_tail;
  j["max_order"] = c.max_order;
  j["contour_radius"] = c.contour_radius;
  j["contour_nodes"] = c.contour_nodes;
  return j;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV with the configuration echoed as '#' lines above the fixed header.
class Csv {
 public:
  Csv(const ordered_json& config, const std::string& header) {
    for (const auto& [k, v] : config.items()) os_ << "# " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    os_ << header << '\n';
  }
  void row(const std::vector<double>& vals) {
    for (std::size_t i = 0; i < vals.size(); ++i) os_ << (i ? "," : "") << num(vals[i]);
    os_ << '\n';
  }
  void row(const std::string& label, const std::vector<double>& vals) {
    os_ << label;
    for (double v : vals) os_ << ',' << num(v);
    os_ << '\n';
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::vector<double> flat(const Mat2C& m) {
  return {m.m11.real(), m.m11.imag(), m.m12.real(), m.m12.imag(),
          m.m21.real(), m.m21.imag(), m.m22.real(), m.m22.imag()};
}

struct Output {
  std::string text;
  std::string summary;
};

PotentialSpec load_potential(const RunConfig& rc) {
  if (rc.potential_path.empty()) throw ConfigurationError("--potential is required for " + to_string(rc.command));
  std::ifstream in(rc.potential_path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot read potential file '" + rc.potential_path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  PotentialSpec spec = parse_potential(ss.str());
  if (rc.ell_override) {
    if (!(*rc.ell_override > 0.0)) throw ConfigurationError("--ell must be positive");
    spec.ell = *rc.ell_override;
  }
  spec.validate();
  return spec;
}

const KGrid& require_k(const RunConfig& rc) {
  if (!rc.k_grid) throw ConfigurationError("--k is required for " + to_string(rc.command));
  return *rc.k_grid;
}

void warn_small_k(const std::vector<double>& ks, SupportWindow w, std::ostream& err) {
  std::size_t n = 0;
  for (double k : ks) n += small_k(k, w) ? 1 : 0;
  if (n > 0)
    err << "warning: " << n << " of " << ks.size() << " k values have |k| * (window width) < "
        << kSmallKThreshold << "; direct integration is ill-conditioned there, use the lowenergy command\n";
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

Output run_transfer(const RunConfig& rc, std::ostream& err) {
  const PotentialSpec spec = load_potential(rc);
  const Config& cfg = rc.tolerances;
  const SupportWindow w = truncate(spec, cfg.eps_tail, 0);
  const std::vector<double> ks = require_k(rc).values();
  warn_small_k(ks, w, err);
  const bool amps = rc.command == Command::amplitudes;
  struct Row {
    Mat2C m;
    Amplitudes a;
  };
  const auto rows = parallel_map<Row>(ks.size(), rc.threads, [&](std::size_t i) {
    Row r;
    const TransferMatrix tm = transfer_matrix(spec, ks[i], w, cfg.ode);
    r.m = tm.m;
    if (amps) r.a = amplitudes(tm, cfg.amplitude_atol);
    return r;
  });
  const ordered_json config = config_json(rc, &spec);
  Output o;
  o.summary = to_string(rc.command) + ": " + std::to_string(ks.size()) + " k values";
  if (rc.format == "csv") {
    Csv csv(config, amps ? "k,re_rl,im_rl,re_rr,im_rr,re_t,im_t"
                         : "k,re_m11,im_m11,re_m12,im_m12,re_m21,im_m21,re_m22,im_m22,det_residual");
    for (std::size_t i = 0; i < ks.size(); ++i) {
      std::vector<double> v{ks[i]};
      if (amps) {
        for (Complex c : {rows[i].a.Rl, rows[i].a.Rr, rows[i].a.T}) v.insert(v.end(), {c.real(), c.imag()});
      } else {
        const auto f = flat(rows[i].m);
        v.insert(v.end(), f.begin(), f.end());
        v.push_back(std::abs(rows[i].m.det() - 1.0));
      }
      csv.row(v);
    }
    o.text = csv.str();
    return o;
  }
  ordered_json j;
  j["config"] = config;
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    ordered_json r;
    r["k"] = ks[i];
    if (amps) {
      r["rl"] = cjson(rows[i].a.Rl);
      r["rr"] = cjson(rows[i].a.Rr);
      r["t"] = cjson(rows[i].a.T);
    } else {
      r["m"] = mjson(rows[i].m);
      r["det_residual"] = std::abs(rows[i].m.det() - 1.0);
    }
    arr.push_back(r);
  }
  j["results"] = arr;
  o.text = dump(j);
  return o;
}

Output run_lowenergy(const RunConfig& rc, std::ostream& err) {
  const PotentialSpec spec = load_potential(rc);
  const Config& cfg = rc.tolerances;
  const SupportWindow w = truncate(spec, cfg.eps_tail, std::max(cfg.max_order, rc.order));
  const ZeroEnergyField f = solve_phi(spec, w, cfg.ode, cfg.grid);
  const LowEnergyCoefficients c = full_coefficients(f);
  const LaurentExpansion lx = laurent_expansion(f, rc.order);
  const ResonanceVerdict rv = classify_resonance(c, cfg.tau);
  const AmplitudeSeries s = amplitude_series(c, std::min(rc.order, rv.resonant ? 1 : 3), cfg.tau);
  if (s.ill_conditioned)
    err << "warning: resonance margin " << rv.margin << " is below 10 tau; series coefficients are ill-conditioned\n";
  const ordered_json config = config_json(rc, &spec);
  Output o;
  o.summary = "lowenergy: Laurent coefficients m = -1.." + std::to_string(rc.order) + ", " +
              lowscat::to_string(s.branch) + " branch";
  if (rc.format == "csv") {
    Csv csv(config, "m,re_u11,im_u11,re_u12,im_u12,re_u21,im_u21,re_u22,im_u22");
    for (int m = -1; m <= lx.order_max(); ++m) csv.row(std::to_string(m), flat(lx.at(m)));
    o.text = csv.str();
    return o;
  }
  ordered_json j;
  j["config"] = config;
  j["window"] = {w.x_minus, w.x_plus};
  j["coefficients"] = coefficients_json(c);
  j["resonance"] = {{"resonant", rv.resonant}, {"margin", rv.margin}};
  ordered_json laurent = ordered_json::array();
  for (int m = -1; m <= lx.order_max(); ++m) laurent.push_back({{"m", m}, {"u", mjson(lx.at(m))}});
  j["laurent"] = laurent;
  j["series"] = series_json(s, false);
  o.text = dump(j);
  return o;
}

Output run_zero(const RunConfig& rc, std::ostream&) {
  const PotentialSpec spec = load_potential(rc);
  const Config& cfg = rc.tolerances;
  const SupportWindow w = truncate(spec, cfg.eps_tail, cfg.max_order);
  const ZeroEnergyField f = solve_phi(spec, w, cfg.ode, cfg.grid);
  const LowEnergyCoefficients c = full_coefficients(f);
  const Mat2C m0 = m0_ode(f).m0;
  const ZeroDysonResult dy = m0_dyson(spec, w, rc.order, cfg.grid);
  const ResonanceVerdict rv = classify_resonance(c, cfg.tau);
  const ordered_json config = config_json(rc, &spec);
  Output o;
  o.summary = std::string("zero: ") + (rv.resonant ? "resonant" : "non-resonant") + ", margin " + num(rv.margin);
  if (rc.format == "csv") {
    Csv csv(config, "quantity,re,im");
    const char* names[] = {"m0_11", "m0_12", "m0_21", "m0_22"};
    const Complex ent[] = {m0.m11, m0.m12, m0.m21, m0.m22};
    for (int i = 0; i < 4; ++i) csv.row(names[i], {ent[i].real(), ent[i].imag()});
    for (auto [n, v] : {std::pair{"a1", c.a1}, {"a2", c.a2}, {"b1", c.b1}, {"b2", c.b2}, {"g1", *c.g1}})
      csv.row(n, {v.real(), v.imag()});
    csv.row("resonance_margin", {rv.margin, 0.0});
    o.text = csv.str();
    return o;
  }
  ordered_json j;
  j["config"] = config;
  j["window"] = {w.x_minus, w.x_plus};
  j["m0"] = mjson(m0);
  j["m0_dyson"] = {{"order", rc.order}, {"m0", mjson(dy.m0.m0)}, {"difference", (dy.m0.m0 - m0).norm()}};
  j["coefficients"] = coefficients_json(c);
  j["field_wronskian_residual"] = f.wronskian_residual();
  j["resonance"] = {{"resonant", rv.resonant}, {"margin", rv.margin}};
  o.text = dump(j);
  return o;
}

Output run_halfline(const RunConfig& rc, std::ostream& err) {
  const Config& cfg = rc.tolerances;
  HalfLineProblem hp{load_potential(rc), {rc.alpha.value_or(1.0), rc.beta.value_or(0.0), {}}};
  extend(hp);
  const SupportWindow w = truncate(hp.potential, cfg.eps_tail, cfg.max_order);
  const LowEnergyCoefficients c = full_coefficients(solve_phi(hp.potential, w, cfg.ode, cfg.grid));
  const HalfLineVerdict hv = classify_halfline_resonance(hp, c, cfg.tau);
  const AmplitudeSeries s = reflection_series(hp, c, cfg.tau);
  std::vector<double> ks;
  std::vector<Complex> rs;
  if (rc.k_grid) {
    ks = rc.k_grid->values();
    warn_small_k(ks, w, err);
    rs = parallel_map<Complex>(ks.size(), rc.threads, [&](std::size_t i) {
      return reflection(hp, ks[i], cfg.ode, cfg.amplitude_atol);
    });
  }
  const ordered_json config = config_json(rc, &hp.potential);
  Output o;
  o.summary = std::string("halfline: ") + (hv.resonant ? "resonant" : "non-resonant") + " (" + hv.criterion +
              " criterion), " + std::to_string(ks.size()) + " k values";
  if (rc.format == "csv") {
    if (!rc.k_grid) throw ConfigurationError("--format csv for halfline needs --k");
    Csv csv(config, "k,re_r,im_r");
    for (std::size_t i = 0; i < ks.size(); ++i) csv.row({ks[i], rs[i].real(), rs[i].imag()});
    o.text = csv.str();
    return o;
  }
  ordered_json j;
  j["config"] = config;
  j["gamma"] = cjson(gamma(hp.bc));
  j["coefficients"] = coefficients_json(c);
  j["resonance"] = {{"resonant", hv.resonant}, {"criterion", hv.criterion}, {"margin", hv.margin}};
  j["series"] = series_json(s, true);
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < ks.size(); ++i) arr.push_back({{"k", ks[i]}, {"r", cjson(rs[i])}});
  j["results"] = arr;
  o.text = dump(j);
  return o;
}

Output run_validate(const RunConfig& rc, std::ostream&) {
  ValidationOptions opt;
  opt.config = rc.tolerances;
  const auto results = run_validation(opt);
  Output o;
  int passed = 0;
  for (const auto& r : results) {
    o.text += format_result(r) + "\n";
    passed += r.passed ? 1 : 0;
  }
  o.summary = "validate: " + std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria passed";
  if (passed != static_cast<int>(results.size())) o.summary += " (FAILED)";
  return o;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transfer matrices and low-energy scattering data for 1D potentials", "lowscat"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig rc;
  std::string k_text, alpha_text, beta_text;
  std::optional<double> ell, tau;
  app.add_option("--potential", rc.potential_path, "Potential JSON file");
  app.add_option("--k", k_text, "k grid min:max:count[:log]");
  app.add_option("--order", rc.order, "Expansion / Dyson order (1-12)");
  app.add_option("--ell", ell, "Override the length scale ell");
  app.add_option("--alpha", alpha_text, "Half-line boundary alpha as re,im");
  app.add_option("--beta", beta_text, "Half-line boundary beta as re,im");
  app.add_option("--out", rc.out_path, "Output path (default: standard output)");
  app.add_option("--format", rc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tau", tau, "Resonance threshold");
  app.add_option("--threads", rc.threads, "Worker threads for k sweeps (0: all cores)")->check(CLI::NonNegativeNumber);

  const std::pair<const char*, Command> commands[] = {
      {"transfer", Command::transfer}, {"amplitudes", Command::amplitudes}, {"lowenergy", Command::lowenergy},
      {"zero", Command::zero},         {"halfline", Command::halfline},     {"validate", Command::validate}};
  const char* help[] = {"Transfer matrix sweep", "Reflection/transmission sweep", "Laurent and amplitude series",
                        "Zero-energy transfer matrix and coefficients", "Half-line reflection and resonance",
                        "Run the acceptance suite"};
  for (std::size_t i = 0; i < 6; ++i) app.add_subcommand(commands[i].first, help[i]);

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitConfiguration;
  }

  try {
    for (const auto& [name, cmd] : commands)
      if (app.got_subcommand(name)) rc.command = cmd;
    if (!k_text.empty()) rc.k_grid = parse_k_grid(k_text);
    if (rc.order < 1 || rc.order > 12) throw ConfigurationError("--order must be in [1, 12]");
    rc.ell_override = ell;
    if (tau) {
      if (!(*tau > 0.0)) throw ConfigurationError("--tau must be positive");
      rc.tolerances.tau = *tau;
    }
    if (!alpha_text.empty()) rc.alpha = parse_complex(alpha_text);
    if (!beta_text.empty()) rc.beta = parse_complex(beta_text);
    if ((rc.alpha || rc.beta) && rc.command != Command::halfline)
      throw ConfigurationError("--alpha/--beta apply to the halfline command only");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfiguration;
  }

  Output o;
  try {
    switch (rc.command) {
      case Command::transfer:
      case Command::amplitudes: o = run_transfer(rc, err); break;
      case Command::lowenergy: o = run_lowenergy(rc, err); break;
      case Command::zero: o = run_zero(rc, err); break;
      case Command::halfline: o = run_halfline(rc, err); break;
      case Command::validate: o = run_validate(rc, err); break;
    }
  } catch (const ParseError& e) {
    err << "error: potential: " << e.what() << "\n";
    return kExitConfiguration;
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfiguration;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfiguration;
  } catch (const UnsupportedConfiguration& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfiguration;
  } catch (const std::exception& e) {
    err << "computation error: " << e.what() << "\n";
    return kExitComputation;
  }

  if (rc.out_path.empty()) {
    out << o.text;
    err << o.summary << "\n";
  } else {
    std::ofstream f(rc.out_path, std::ios::binary | std::ios::trunc);
    f << o.text;
    f.close();
    if (!f) {
      err << "error: cannot write '" << rc.out_path << "'\n";
      return kExitComputation;
    }
    out << o.summary << " -> " << rc.out_path << "\n";
  }
  const bool failed = rc.command == Command::validate && o.summary.find("FAILED") != std::string::npos;
  return failed ? kExitComputation : kExitOk;
}

}  // namespace lowscat::cli
