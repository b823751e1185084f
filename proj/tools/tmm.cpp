// tmm: batch evaluation and verification front end
#include <CLI11.hpp>
#include <boost/version.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <mpfr.h>
#include <optional>
#include <sstream>

#include "tmm/finiten.hpp"
#include "tmm/kernels.hpp"
#include "tmm/measures.hpp"
#include "tmm/painleve.hpp"
#include "tmm/suites.hpp"
#include "tmm/surface.hpp"

using json = nlohmann::ordered_json;
using namespace tmm;

namespace {

struct Grid {
  double min = 0, max = 1;
  int count = 2;
  std::vector<double> points() const {
    std::vector<double> x(count);
    for (int i = 0; i < count; ++i) x[i] = min + (max - min) * i / (count - 1);
    return x;
  }
};

Grid parse_grid(const std::string& s) {
  Grid g;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> g.min >> c1 >> g.max >> c2 >> g.count) || c1 != ':' || c2 != ':' || !in.eof())
    throw Error(ErrorCode::ConfigError, "grid must be min:max:count, got '" + s + "'");
  if (g.count < 2) throw Error(ErrorCode::ConfigError, "grid count must be >= 2");
  if (!(g.max > g.min)) throw Error(ErrorCode::ConfigError, "grid needs max > min");
  return g;
}

struct Config {
  std::string command;
  std::optional<double> alpha, tau, a, b, s, t, nu, sigma, r, u, v, r0;
  std::optional<int> n, precision_bits;
  std::optional<std::string> grid, measure, which, out;
  std::string format = "csv";
};

// tabular data plus a json report
struct Output {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json params = json::object();
  json extra = json::object();
  std::vector<Check> checks;
};

std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cell(const json& j) {
  if (j.is_number()) return fmt17(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void write_data(std::ostream& os, const Output& o, const std::string& format) {
  if (format == "json") {
    json d;
    d["columns"] = o.columns;
    json rows = json::array();
    for (auto& r : o.rows) {
      json row = json::array();
      for (auto& c : r) row.push_back(c.is_number() && std::isnan(c.get<double>()) ? json(nullptr) : c);
      rows.push_back(row);
    }
    d["rows"] = rows;
    os << d.dump(2) << "\n";
    return;
  }
  for (size_t i = 0; i < o.columns.size(); ++i) os << (i ? "," : "") << o.columns[i];
  os << "\n";
  for (auto& r : o.rows) {
    for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell(r[i]);
    os << "\n";
  }
}

json versions() {
  json v;
  v["tmm"] = "0.1.0";
  v["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  v["boost"] = BOOST_LIB_VERSION;
  v["mpfr"] = MPFR_VERSION_STRING;
  v["compiler"] = __VERSION__;
  return v;
}

json report(const Config& c, const Output& o) {
  json r;
  r["command"] = c.command;
  r["params"] = o.params;
  json checks = json::array();
  for (auto& k : o.checks)
    checks.push_back({{"name", k.name}, {"value", k.value}, {"tolerance", k.tolerance}, {"pass", k.pass}});
  r["checks"] = checks;
  for (auto& [k, v] : o.extra.items()) r[k] = v;
  r["versions"] = versions();
  return r;
}

std::pair<double, double> alpha_tau(const Config& c, json& params) {
  double alpha = c.alpha.value_or(-1.0), tau = c.tau.value_or(1.0);
  if (c.a || c.b) {
    if (c.alpha || c.tau) throw Error(ErrorCode::ConfigError, "give either --alpha/--tau or --a/--b/--n");
    if (!c.n) throw Error(ErrorCode::ConfigError, "--a/--b need --n");
    std::tie(alpha, tau) = scaled_params(c.a.value_or(0.0), c.b.value_or(0.0), *c.n);
    params["a"] = c.a.value_or(0.0);
    params["b"] = c.b.value_or(0.0);
    params["n"] = *c.n;
  }
  params["alpha"] = alpha;
  params["tau"] = tau;
  return {alpha, tau};
}

RhSolveOptions rh_options(const Config& c, json& params) {
  RhSolveOptions o;
  if (c.r0) o.R0 = *c.r0;
  o.validate();
  params["r0"] = o.R0;
  return o;
}

Output cmd_phase(const Config& c) {
  Output o;
  auto [alpha, tau] = alpha_tau(c, o.params);
  auto ph = classify_phase(alpha, tau);
  auto p = make_surface(alpha, tau);
  o.columns = {"alpha", "tau", "gamma", "c", "phase"};
  o.rows.push_back({alpha, tau, p.gamma, p.c, to_string(ph)});
  o.extra["result"] = to_string(ph);
  o.checks.push_back(check_le("gamma equation residual", std::abs(gamma_residual(alpha, tau, p.gamma)), 1e-10));
  return o;
}

Output cmd_density(const Config& c) {
  Output o;
  auto [alpha, tau] = alpha_tau(c, o.params);
  auto m = measure_from_string(c.measure.value_or("mu1"));
  auto g = parse_grid(c.grid.value_or("-3.1:3.1:400"));
  o.params["measure"] = to_string(m);
  o.params["grid"] = {g.min, g.max, g.count};
  auto p = make_surface(alpha, tau);
  o.columns = {m == MeasureId::mu2 || m == MeasureId::sigma2 ? "y" : "x", "density"};
  for (double x : g.points()) {
    double v = NAN;
    try {
      v = (m == MeasureId::mu1 && std::abs(x) >= p.c) ? 0.0 : density(m, x, p);
    } catch (const Error&) {
    }
    o.rows.push_back({x, v});
  }
  if (m == MeasureId::mu1) o.checks.push_back(check_le("mu1 mass - 1", std::abs(mass_mu1(p).mass - 1.0), 1e-6));
  if (m == MeasureId::mu2) o.checks.push_back(check_le("mu2 mass - 2/3", std::abs(mass_mu2(p).mass - 2.0 / 3.0), 1e-4));
  if (m == MeasureId::mu3) o.checks.push_back(check_le("mu3 mass - 1/3", std::abs(mass_mu3(p).mass - 1.0 / 3.0), 1e-4));
  return o;
}

Output cmd_hm(const Config& c) {
  Output o;
  auto g = parse_grid(c.grid.value_or("-8:8:161"));
  o.params["grid"] = {g.min, g.max, g.count};
  o.columns = {"sigma", "q", "qprime", "u"};
  for (double x : g.points()) {
    auto h = hastings_mcleod(x);
    o.rows.push_back({x, h.q, h.qprime, h.u});
  }
  o.checks = suite_painleve();
  return o;
}

Output cmd_lax(const Config& c) {
  Output o;
  double s0 = c.s.value_or(0.0), t0 = c.t.value_or(0.0);
  o.params["s"] = s0;
  o.params["t"] = t0;
  o.columns = {"zeta_re", "zeta_im", "s", "t", "compatibility"};
  double comp = 0, ident = 0;
  for (double ds : {-0.5, 0.0, 0.5})
    for (double dt : {-0.5, 0.0, 0.5}) {
      for (cplx z : {cplx(0.5, 0.3), cplx(-1.2, 0.8), cplx(2.0, -1.5)}) {
        double r = compatibility_residual(z, s0 + ds, t0 + dt);
        comp = std::max(comp, r);
        o.rows.push_back({z.real(), z.imag(), s0 + ds, t0 + dt, r});
      }
      ident = std::max(ident, lax_identities(s0 + ds, t0 + dt).max());
    }
  o.checks = {check_le("zero-curvature residual, 27 points", comp, 1e-6),
              check_le("scalar identities, max of six", ident, 1e-6)};
  return o;
}

Output cmd_rh(const Config& c) {
  Output o;
  double s = c.s.value_or(0.0), t = c.t.value_or(0.0);
  o.params["s"] = s;
  o.params["t"] = t;
  auto opts = rh_options(c, o.params);
  RhContext ctx(s, t, opts);
  o.params["R0_used"] = ctx.R0_used;
  o.columns = {"ray", "radius", "residual"};
  double jr = 0;
  for (auto& j : jump_residuals(ctx, {0.5, 2.0})) {
    o.rows.push_back({j.ray, j.radius, j.residual});
    jr = std::max(jr, j.residual);
  }
  double det = 0;
  for (cplx z : {cplx(0.7, 0.4), cplx(-1.2, 0.3), cplx(0.5, -0.9), cplx(0, 3), cplx(-2.5, 0)})
    det = std::max(det, std::abs(solve_M(z, ctx).Ms.det() - 1.0));
  auto h = hm_extraction(s, t, opts);
  o.checks = {check_le("det M - 1", det, 1e-6), check_le("ray jumps at radii 0.5, 2", jr, 1e-4),
              check_le("connection matrix", connection_residual(cplx(0.8, 0.6), ctx), 1e-4),
              check_le("q extraction", std::abs(h.value - h.target), 1e-3)};
  return o;
}

Output cmd_kernel(const Config& c) {
  Output o;
  std::string which = c.which.value_or("cr");
  o.params["which"] = which;
  auto opts = rh_options(c, o.params);
  std::vector<std::pair<double, double>> uv;
  if (c.grid) {
    auto g = parse_grid(*c.grid);
    o.params["grid"] = {g.min, g.max, g.count};
    for (double x : g.points()) uv.push_back({x, c.v.value_or(x)});
  } else {
    if (!c.u) throw Error(ErrorCode::ConfigError, "kernel needs --u (and optionally --v) or --grid");
    uv.push_back({*c.u, c.v.value_or(*c.u)});
  }
  if (c.v) o.params["v"] = *c.v;
  o.columns = {"u", "v", "K"};
  double max_imag = 0;
  auto run = [&](auto& K) {
    for (auto [u, v] : uv) o.rows.push_back({u, v, u == v ? K.diag(u) : K(u, v)});
    max_imag = K.max_imag;
  };
  if (which == "cr") {
    CrParams p{c.s.value_or(0.0), c.t.value_or(0.0)};
    o.params["s"] = p.s;
    o.params["t"] = p.t;
    CrKernel K(p, opts);
    run(K);
  } else if (which == "tac") {
    TacParams p{c.r.value_or(1.0), c.s.value_or(0.0)};
    o.params["r"] = p.r;
    o.params["s"] = p.s;
    TacKernel K(p, opts);
    run(K);
  } else if (which == "pii") {
    double nu = c.nu.value_or(0.0);
    o.params["nu"] = nu;
    PiiKernel K(nu);
    run(K);
  } else {
    throw Error(ErrorCode::ConfigError, "--which must be cr, tac or pii");
  }
  o.checks.push_back(check_le("max |Im K|", max_imag, 1e-6));
  return o;
}

Output cmd_asym(const Config& c) {
  Output o;
  std::string which = c.which.value_or("tac");
  o.params["which"] = which;
  auto opts = rh_options(c, o.params);
  auto g = parse_grid(c.grid.value_or("15:30:151"));
  o.params["grid"] = {g.min, g.max, g.count};
  auto us = g.points();
  TacParams pt{c.r.value_or(1.0), c.s.value_or(0.0)};
  CrParams pc{c.s.value_or(0.0), c.t.value_or(0.0)};
  std::vector<double> scaled, osc, phase;
  o.columns = {"u", "K", "asymptotic", "scaled_remainder"};
  if (which == "cr") {
    o.params["s"] = pc.s;
    o.params["t"] = pc.t;
    CrKernel K(pc, opts);
    for (double u : us) {
      double k = K.diag(u), a = cr_diag_asym(u, pc);
      scaled.push_back(std::pow(u, 1.5) * std::abs(k - a));
      osc.push_back(k - a);
      phase.push_back(tac_phase(u, {1.0, pc.s}));
      o.rows.push_back({u, k, a, scaled.back()});
    }
  } else if (which == "tac") {
    o.params["r"] = pt.r;
    o.params["s"] = pt.s;
    TacKernel K(pt, opts);
    for (double u : us) {
      double k = K.diag(u), a = tac_diag_asym(u, pt, true);
      scaled.push_back(std::pow(u, 1.5) * std::abs(k - a));
      osc.push_back(k - tac_diag_asym(u, pt, false));
      phase.push_back(tac_phase(u, pt));
      o.rows.push_back({u, k, a, scaled.back()});
    }
  } else {
    throw Error(ErrorCode::ConfigError, "asym-check --which must be cr or tac");
  }
  auto fit = fit_oscillation(us, osc, phase);
  o.extra["oscillation_fit"] = {{"A", fit.A}, {"B", fit.B}, {"C0", fit.C0}, {"C1", fit.C1}};
  o.checks.push_back(check_le("scaled remainder max", *std::max_element(scaled.begin(), scaled.end()), 1.0));
  o.checks.push_back(check_le("remainder growth ratio", growth_ratio(scaled), 1.5));
  if (which == "tac")
    o.checks.push_back(check_le("1/u oscillation amplitude - 1", std::abs(fit.amplitude - 1.0), 0.2));
  else
    o.checks.push_back(check_le("1/u oscillation amplitude", fit.amplitude, 0.2));
  return o;
}

Output cmd_double_scaling(const Config& c) {
  Output o;
  double sigma = c.sigma.value_or(0.5), x = c.u.value_or(-0.5), y = c.v.value_or(0.7);
  o.params["sigma"] = sigma;
  o.params["x"] = x;
  o.params["y"] = y;
  std::vector<double> as = c.a ? std::vector<double>{*c.a} : std::vector<double>{3, 4, 5};
  o.params["a"] = as;
  o.columns = {"a", "det_scaled", "det_pii", "gap"};
  std::vector<double> gaps;
  for (double a : as) {
    auto d = double_scaling(a, sigma, x, y);
    o.rows.push_back({a, d.det_s, d.det_p, d.gap});
    gaps.push_back(d.gap);
  }
  if (gaps.size() >= 2) {
    bool dec = true;
    for (size_t i = 1; i < gaps.size(); ++i) dec = dec && gaps[i] < gaps[i - 1];
    o.checks.push_back(check_true("gap strictly decreasing in a", dec));
    o.checks.push_back(check_le("gap(last) / gap(first)", gaps.back() / gaps.front(), 0.6));
  }
  return o;
}

Output cmd_finite_n(const Config& c) {
  Output o;
  int n = c.n.value_or(12);
  double alpha = c.alpha.value_or(-1.0), tau = c.tau.value_or(1.0);
  int bits = c.precision_bits.value_or(0);
  auto g = parse_grid(c.grid.value_or("-3.5:3.5:141"));
  o.params["n"] = n;
  o.params["alpha"] = alpha;
  o.params["tau"] = tau;
  o.params["grid"] = {g.min, g.max, g.count};
  auto fam = biorthogonal(n, alpha, tau, bits);
  o.params["precision_bits"] = fam.precision_bits;
  auto Z = zeros_pn(fam);
  double ks = kolmogorov_to_mu1(Z.zeros, alpha, tau);
  o.extra["zeros"] = Z.zeros;
  FiniteKernel K(fam);
  auto p = make_surface(alpha, tau);
  o.columns = {"x", "Kn_over_n", "rho1"};
  for (double x : g.points()) {
    double rho = 0;
    if (std::abs(x) < p.c) {
      try {
        rho = density_mu1(x, p);
      } catch (const Error&) {
        rho = NAN;
      }
    }
    o.rows.push_back({x, K.density(x), rho});
  }
  o.checks = {check_true("zeros of p_n real and simple", Z.all_real_simple), check_le("Kolmogorov distance to mu1", ks, 0.15),
              check_le("biorthogonality residual", fam.residual, std::pow(10.0, -fam.precision_bits / 8.0)),
              check_le("trace of K_n - n", std::abs(kernel_trace(K) - n), 1e-4)};
  return o;
}

void add_common(CLI::App* sc, Config& c) {
  sc->add_option("--alpha", c.alpha);
  sc->add_option("--tau", c.tau);
  sc->add_option("--a", c.a);
  sc->add_option("--b", c.b);
  sc->add_option("--n", c.n);
  sc->add_option("--s", c.s);
  sc->add_option("--t", c.t);
  sc->add_option("--nu", c.nu);
  sc->add_option("--sigma", c.sigma);
  sc->add_option("--r", c.r);
  sc->add_option("--u", c.u);
  sc->add_option("--v", c.v);
  sc->add_option("--grid", c.grid, "min:max:count");
  sc->add_option("--measure", c.measure)->check(CLI::IsMember({"mu1", "mu2", "mu3", "sigma2"}));
  sc->add_option("--which", c.which)->check(CLI::IsMember({"cr", "tac", "pii"}));
  sc->add_option("--out", c.out, "data file; the report goes to <out>.report.json");
  sc->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
  sc->add_option("--precision-bits", c.precision_bits);
  sc->add_option("--r0", c.r0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"critical kernels of the quartic/quadratic two-matrix model"};
  app.require_subcommand(1);
  Config cfg;
  const std::vector<std::pair<std::string, std::string>> cmds{
      {"phase", "classify (alpha, tau)"},
      {"density", "density of mu1, mu2, mu3 or sigma2 on a grid"},
      {"hm", "Hastings-McLeod q, q', u on a grid"},
      {"lax-check", "zero-curvature and scalar identity residuals"},
      {"rh-check", "jump, determinant, connection and extraction checks for M"},
      {"kernel", "K_cr, K_tac or K_PII at (u, v) or along a grid"},
      {"asym-check", "large-u remainder of K_cr or K_tac"},
      {"double-scaling", "determinant gap between scaled K_cr and K_PII"},
      {"finite-n", "finite-n zeros and K_n(x,x)/n"}};
  for (auto& [name, help] : cmds) {
    auto* sc = app.add_subcommand(name, help);
    add_common(sc, cfg);
    sc->callback([&cfg, name = name] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Output out;
  try {
    const auto& c = cfg.command;
    if (c == "phase") out = cmd_phase(cfg);
    else if (c == "density") out = cmd_density(cfg);
    else if (c == "hm") out = cmd_hm(cfg);
    else if (c == "lax-check") out = cmd_lax(cfg);
    else if (c == "rh-check") out = cmd_rh(cfg);
    else if (c == "kernel") out = cmd_kernel(cfg);
    else if (c == "asym-check") out = cmd_asym(cfg);
    else if (c == "double-scaling") out = cmd_double_scaling(cfg);
    else if (c == "finite-n") out = cmd_finite_n(cfg);
  } catch (const Error& e) {
    std::cerr << "tmm: " << to_string(e.code()) << ": " << e.what() << "\n";
    bool config = e.code() == ErrorCode::ConfigError || e.code() == ErrorCode::DomainRestriction ||
                  e.code() == ErrorCode::OutOfDomain;
    return config ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "tmm: " << e.what() << "\n";
    return 1;
  }

  json rep = report(cfg, out);
  if (cfg.out) {
    std::ofstream df(*cfg.out, std::ios::binary);
    std::ofstream rf(*cfg.out + ".report.json", std::ios::binary);
    if (!df || !rf) {
      std::cerr << "tmm: cannot write " << *cfg.out << "\n";
      return 2;
    }
    write_data(df, out, cfg.format);
    rf << rep.dump(2) << "\n";
  } else {
    write_data(std::cout, out, cfg.format);
    std::cerr << rep.dump(2) << "\n";
  }
  return all_pass(out.checks) || out.checks.empty() ? 0 : 1;
}
