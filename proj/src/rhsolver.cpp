#include "tmm/rhsolver.hpp"

#include <algorithm>
#include <cmath>

namespace tmm {

namespace {

const std::array<double, 4> P_EXP{-0.5, -0.5, 0.5, 0.5};

Mat4 E(int i, int j) {
  Mat4 m = Mat4::Zero();
  m(i - 1, j - 1) = 1;
  return m;
}

using Sector = std::pair<double, double>;
// sectors where row j of M^{-1} (resp. column j of M) is most recessive, upper half
const std::array<Sector, 4> UP_ROWS{{{pi / 6, pi / 2}, {pi / 2, 5 * pi / 6}, {5 * pi / 6, pi}, {0.0, pi / 6}}};
const std::array<Sector, 4> UP_COLS{{{5 * pi / 6, pi}, {0.0, pi / 6}, {pi / 6, pi / 2}, {pi / 2, 5 * pi / 6}}};

Sector sector_for(int half, bool rows, int j) {
  Sector s = rows ? UP_ROWS[j] : UP_COLS[j];
  if (half > 0) return s;
  return {-s.second, -s.first};
}

// leading exponents on the continuation br at polar (r, th), th continuous in the window
std::array<double, 4> chi_re(double r, double th, double s, double t, int br) {
  cplx z = std::sqrt(r) * std::exp(I * (th / 2)), w = std::sqrt(r) * std::exp(I * ((th - br * pi) / 2));
  cplx zeta = r * std::exp(I * th);
  auto psi = [s](cplx x) { return 2.0 / 3.0 * x * x * x + 2 * s * x; };
  return {std::real(-psi(w) + t * zeta), std::real(-psi(z) - t * zeta), std::real(psi(w) + t * zeta),
          std::real(psi(z) - t * zeta)};
}

struct Polar {
  double r, th;
};

// worst growth of another solution relative to the integrated one along the path
double path_cost(const std::vector<Polar>& nodes, int j, bool rows, double s, double t, int br) {
  std::vector<std::array<double, 4>> g;
  for (size_t q = 0; q + 1 < nodes.size(); ++q)
    for (int m = 0; m < 60; ++m) {
      double x = m / 59.0;
      double r = nodes[q].r + (nodes[q + 1].r - nodes[q].r) * x;
      double th = nodes[q].th + (nodes[q + 1].th - nodes[q].th) * x;
      auto c = chi_re(r, th, s, t, br);
      std::array<double, 4> v;
      for (int k = 0; k < 4; ++k) v[k] = (rows ? -1 : 1) * (c[k] - c[j]);
      g.push_back(v);
    }
  double worst = -1e300;
  const auto& end = g.back();
  for (const auto& v : g)
    for (int k = 0; k < 4; ++k)
      if (k != j) worst = std::max(worst, end[k] - v[k]);
  return worst;
}

struct PathChoice {
  double cost = 1e300;
  std::vector<Polar> nodes;
};

PathChoice choose_path(double r, double th, double R, int j, bool rows, int half, const RhContext& ctx) {
  auto sec = sector_for(half, rows, j);
  double m = 0.1 * (sec.second - sec.first);
  std::vector<double> r1s;
  for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) r1s.push_back(std::min(x, r));
  r1s.push_back(r);
  std::sort(r1s.begin(), r1s.end());
  r1s.erase(std::unique(r1s.begin(), r1s.end()), r1s.end());
  PathChoice best;
  for (int q = 0; q < 7; ++q) {
    double a = sec.first + m + (sec.second - sec.first - 2 * m) * q / 6.0;
    for (double r1 : r1s) {
      std::vector<Polar> nodes{{R, a}, {r1, a}, {r1, th}, {r, th}};
      double c = path_cost(nodes, j, rows, ctx.s, ctx.t, half);
      if (c < best.cost - 1e-9) best = {c, nodes};
    }
  }
  return best;
}

int kmax_of(FrameOrder o) { return o == FrameOrder::Zero ? 1 : o == FrameOrder::One ? 3 : 0; }

// B(z) A Ys and exponents at zeta = R e^{i th} on the continuation of the half
struct SeriesPoint {
  Mat4 F;
  Vec4 expo;
  double err;
};

SeriesPoint series_at(double R, double th, int half, const RhContext& ctx) {
  const double b = half;
  cplx z = std::sqrt(R) * std::exp(I * (th / 2));
  auto ev = ctx.series(half).eval(z, kmax_of(ctx.opts.order));
  const std::array<cplx, 4> beta{std::exp(b * I * pi / 4.0), 1.0, std::exp(-b * I * pi / 4.0), 1.0};
  Vec4 Bz;
  for (int i = 0; i < 4; ++i) Bz(i) = beta[i] * std::pow(z, P_EXP[i]);
  return {Bz.asDiagonal() * matrix_A() * ev.Ys, ev.expo, ev.err};
}

// continuous angle of zeta in the window of the half
double half_angle(cplx zeta, int half) {
  double th = std::arg(zeta);
  if (half > 0 && th < -pi / 2) th += 2 * pi;
  if (half < 0 && th > pi / 2) th -= 2 * pi;
  return th;
}

double series_error_at(const FormalSeries<4>& fs, double R) {
  double az = std::sqrt(R), best = 1e300;
  for (size_t k = 1; k < fs.Y.size(); ++k) best = std::min(best, maxabs(fs.Y[k]) * std::pow(az, -double(k)));
  return best;
}

ScaledMat<4> scaled_solve(cplx zeta, const RhContext& ctx) { return solve_M(zeta, ctx).Ms; }

}  // namespace

void RhSolveOptions::validate() const {
  if (!(R0 >= 6)) throw Error(ErrorCode::ConfigError, "R0 must be at least 6");
  if (!(tol > 0 && tol <= 1e-6)) throw Error(ErrorCode::ConfigError, "tol must lie in (0, 1e-6]");
  if (!(max_step > 0)) throw Error(ErrorCode::ConfigError, "max_step must be positive");
  if (!(series_tol > 0)) throw Error(ErrorCode::ConfigError, "series_tol must be positive");
}

RhContext::RhContext(double s_, double t_, const RhSolveOptions& o, const HmSolution& hm) : s(s_), t(t_), opts(o) {
  opts.validate();
  C = lax_coefficients(s, t, hm);
  Cg = lax_gauged(C);
  G = lax_gauge_matrix(C);
  Ginv = G.inverse();
  ser_plus = lax_formal_series(Cg, Branch::Plus, 60);
  ser_minus = lax_formal_series(Cg, Branch::Minus, 60);
  Mat4 U0 = lax_U(0.0, Cg), U1 = lax_U(1.0, Cg) - U0;
  Ucol.c = {U0, U1};
  Urow = Ucol.transposed_neg();
  R0_used = opts.R0;
  auto err = [&](double R) { return std::max(series_error_at(ser_plus, R), series_error_at(ser_minus, R)); };
  start_series_error = err(R0_used);
  if (opts.order == FrameOrder::Optimal && start_series_error >= opts.series_tol) {
    for (double R : {16.0, 20.0, 25.0, 30.0, 38.0, 45.0, 55.0, 65.0, 80.0, 100.0}) {
      if (R <= opts.R0) continue;
      R0_used = R;
      start_series_error = err(R);
      if (start_series_error < opts.series_tol) break;
    }
  }
}

double ray_angle(int k) {
  static const std::array<double, 10> a{0.0,  pi / 6,          pi / 3,      2 * pi / 3,  5 * pi / 6,
                                        pi,   -5 * pi / 6,     -2 * pi / 3, -pi / 3,     -pi / 6};
  return a.at(k);
}

Mat4 jump_matrix(int k) {
  Mat4 Id = Mat4::Identity(), J;
  switch (k) {
    case 0:
      J << 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1;
      return J;
    case 1:
    case 9:
      return Id + E(3, 1);
    case 2:
      return Id - E(2, 1) + E(3, 4);
    case 3:
      return Id + E(1, 2) - E(4, 3);
    case 4:
    case 6:
      return Id - E(4, 2);
    case 5:
      J << 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0;
      return J;
    case 7:
      return Id - E(1, 2) + E(4, 3);
    case 8:
      return Id + E(2, 1) - E(3, 4);
  }
  throw Error(ErrorCode::ConfigError, "jump ray index out of range");
}

char region_of(cplx zeta) {
  if (zeta == 0.0) throw Error(ErrorCode::OutOfDomain, "zeta = 0 has no region");
  double th = std::arg(zeta);
  // snap to rays so that points built from ray_angle land on the counterclockwise side
  for (int k = 0; k < 10; ++k)
    if (std::abs(th - ray_angle(k)) < 1e-12) th = ray_angle(k);
  if (std::abs(th + pi) < 1e-12 || th >= pi) th = -pi;
  static const std::array<double, 10> lo{-pi, -5 * pi / 6, -2 * pi / 3, -pi / 3, -pi / 6,
                                         0.0, pi / 6,      pi / 3,      2 * pi / 3, 5 * pi / 6};
  static const char names[] = "fghijabcde";
  for (int k = 9; k >= 0; --k)
    if (th >= lo[k]) return names[k];
  return 'f';
}

int region_half(char r) { return r <= 'e' ? 1 : -1; }

Mat4 region_factor(char r) {
  switch (r) {
    case 'a': return (jump_matrix(1) * jump_matrix(2)).inverse();
    case 'b': return jump_matrix(2).inverse();
    case 'c': return Mat4::Identity();
    case 'd': return jump_matrix(3);
    case 'e': return jump_matrix(3) * jump_matrix(4);
    case 'f': return (jump_matrix(6) * jump_matrix(7)).inverse();
    case 'g': return jump_matrix(7).inverse();
    case 'h': return Mat4::Identity();
    case 'i': return jump_matrix(8);
    case 'j': return jump_matrix(8) * jump_matrix(9);
  }
  throw Error(ErrorCode::ConfigError, "unknown region");
}

namespace {

struct Plan {
  bool rows = true;
  double cost = 0;
  std::array<PathChoice, 4> paths;
};

Plan plan_paths(double r, double th, double R, int half, const RhContext& ctx, SolveFamily fam) {
  std::array<PathChoice, 4> pr, pc;
  double cr = -1e300, cc = -1e300;
  for (int j = 0; j < 4; ++j) {
    if (fam != SolveFamily::Cols) {
      pr[j] = choose_path(r, th, R, j, true, half, ctx);
      cr = std::max(cr, pr[j].cost);
    }
    if (fam != SolveFamily::Rows) {
      pc[j] = choose_path(r, th, R, j, false, half, ctx);
      cc = std::max(cc, pc[j].cost);
    }
  }
  Plan p;
  p.rows = fam == SolveFamily::Rows || (fam == SolveFamily::Auto && cr <= cc);
  p.cost = p.rows ? cr : cc;
  p.paths = p.rows ? pr : pc;
  return p;
}

ScaledMat<4> integrate(cplx zeta, int half, const Plan& plan, const RhContext& ctx, RhDiagnostics* diag) {
  const bool rows = plan.rows;
  const PolyMat<4>& P = rows ? ctx.Urow : ctx.Ucol;
  Mat4 hat;
  Vec4 logs;
  double serr = 0;
  int steps = 0;
  for (int j = 0; j < 4; ++j) {
    const auto& nodes = plan.paths[j].nodes;
    auto sp = series_at(nodes[0].r, nodes[0].th, half, ctx);
    serr = std::max(serr, sp.err);
    ScaledVec<4> y;
    if (rows) {
      Mat4 Fi = sp.F.inverse();
      y.v = Fi.row(j).transpose();
      y.logs = -sp.expo(j);
    } else {
      y.v = sp.F.col(j);
      y.logs = sp.expo(j);
    }
    double n = maxabs(y.v);
    y.v /= n;
    y.logs += std::log(n);
    // radial, arc by chords, radial
    std::vector<cplx> pts{nodes[0].r * std::exp(I * nodes[0].th), nodes[1].r * std::exp(I * nodes[1].th)};
    double r1 = nodes[1].r, a0 = nodes[1].th, a1 = nodes[2].th;
    int nn = std::max(2, int(std::abs(a1 - a0) * r1 / ctx.opts.max_step) + 1);
    if (a1 != a0)
      for (int q = 1; q <= nn; ++q) pts.push_back(r1 * std::exp(I * (a0 + (a1 - a0) * q / nn)));
    pts.push_back(zeta);
    for (size_t q = 0; q + 1 < pts.size(); ++q) steps += taylor_segment(P, y, pts[q], pts[q + 1]);
    if (rows) {
      hat.row(j) = y.v.transpose();
      logs(j) = y.logs;
    } else {
      hat.col(j) = y.v;
      logs(j) = y.logs;
    }
  }
  ScaledMat<4> out;
  if (rows) {
    out.hat = ctx.G * hat.inverse();
    out.logs = -logs;
  } else {
    out.hat = ctx.G * hat;
    out.logs = logs;
  }
  if (diag) {
    diag->cost = plan.cost;
    diag->family = rows ? SolveFamily::Rows : SolveFamily::Cols;
    diag->series_error = serr;
    diag->steps = steps;
    diag->conditioning_warning = plan.cost > ctx.opts.cost_budget;
  }
  return out;
}

}  // namespace

ScaledMat<4> solve_canonical(cplx zeta, int half, const RhContext& ctx, SolveFamily fam, RhDiagnostics* diag) {
  const double r = std::abs(zeta), th = half_angle(zeta, half);
  if (r == 0) throw Error(ErrorCode::OutOfDomain, "solve at zeta = 0");
  const double R = std::max(ctx.R0_used, 1.5 * r);
  auto plan = plan_paths(r, th, R, half, ctx, fam);
  if (diag) diag->R0_used = R;
  return integrate(zeta, half, plan, ctx, diag);
}

RhSolution solve_M(cplx zeta, const RhContext& ctx) {
  RhSolution sol;
  sol.zeta = zeta;
  sol.s = ctx.s;
  sol.t = ctx.t;
  sol.region = region_of(zeta);
  const int half = region_half(sol.region);
  const double r = std::abs(zeta);
  auto& dg = sol.diagnostics;
  const double th = half_angle(zeta, half);
  auto use_series = [&](const SeriesPoint& sp) {
    sol.Ms.hat = ctx.G * sp.F;
    sol.Ms.logs = sp.expo;
    dg.series_error = sp.err;
    dg.R0_used = r;
    dg.direct_series = true;
    dg.family = SolveFamily::Auto;
  };
  const bool series_ok = ctx.opts.direct_series && ctx.opts.order == FrameOrder::Optimal;
  bool direct = false;
  if (series_ok && r >= ctx.R0_used) {
    auto sp = series_at(r, th, half, ctx);
    if (sp.err < ctx.opts.series_tol) {
      use_series(sp);
      direct = true;
    }
  }
  if (!direct) {
    const double R = std::max(ctx.R0_used, 1.5 * r);
    auto plan = plan_paths(r, th, R, half, ctx, ctx.opts.family);
    // the series wins once the path amplifies roundoff beyond its truncation error
    if (series_ok && r >= 2) {
      auto sp = series_at(r, th, half, ctx);
      if (sp.err < 1e-16 * std::exp(plan.cost)) {
        use_series(sp);
        dg.cost = plan.cost;
        direct = true;
      }
    }
    if (!direct) {
      dg.R0_used = R;
      sol.Ms = integrate(zeta, half, plan, ctx, &dg).times(region_factor(sol.region));
    }
  }
  sol.M = sol.Ms.value();
  dg.det_error = std::abs(sol.Ms.det() - 1.0);
  if (ctx.opts.ode_residual) {
    // fourth-order central difference along the ray through zeta
    RhContext c2 = ctx;
    c2.opts.ode_residual = false;
    cplx h = 1e-3 * zeta;
    auto at = [&](cplx x) {
      auto m = scaled_solve(x, c2);
      Mat4 v = m.hat;
      for (int j = 0; j < 4; ++j) v.col(j) *= std::exp(m.logs(j) - sol.Ms.logs(j));
      return v;
    };
    Mat4 d = (8.0 * (at(zeta + h) - at(zeta - h)) - (at(zeta + 2.0 * h) - at(zeta - 2.0 * h))) / (12.0 * h);
    Mat4 UM = lax_U(zeta, ctx.C) * sol.Ms.hat;
    dg.ode_residual = maxabs(d - UM) / maxabs(UM);
  }
  return sol;
}

RhSolution solve_M(cplx zeta, double s, double t, const RhSolveOptions& opts) {
  RhContext ctx(s, t, opts);
  return solve_M(zeta, ctx);
}

HmExtraction hm_extraction(double s, double t, const RhSolveOptions& opts) {
  // start well outside the sample radii so every sample comes from the ODE
  RhSolveOptions o = opts;
  o.R0 = std::max(opts.R0, 30.0);
  RhContext ctx(s, t, o);
  const Mat4 Ai = matrix_A().inverse();
  std::vector<cplx> xs, ys;
  for (double R : {10.0, 14.0, 18.0, 22.0, 26.0}) {
    cplx zeta(0, R);
    auto m = solve_canonical(zeta, 1, ctx, SolveFamily::Auto);
    auto chi = frame_exponents(zeta, s, t, Branch::Plus);
    Vec4 B = frame_B(zeta, Branch::Plus);
    cplx acc = 0;
    for (int j = 0; j < 4; ++j) acc += m.hat(0, j) * std::exp(m.logs(j) - chi[j]) * Ai(j, 3);
    acc /= B(3);
    xs.push_back(1.0 / zeta);
    ys.push_back(zeta * acc);
  }
  // the expansion runs in integer powers of 1/zeta; Neville extrapolation to 0
  std::vector<cplx> p = ys;
  const int n = int(xs.size());
  for (int k = 1; k < n; ++k)
    for (int i = 0; i + k < n; ++i) p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i]);
  HmExtraction h;
  h.value = p[0];
  h.target = I * ctx.C.d;
  h.rel_error = std::abs(h.value - h.target) / std::abs(h.target);
  return h;
}

const Mat4& matrix_Cplus() {
  static const Mat4 C = [] {
    Mat4 c;
    c << 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, -1, 0, 0, -1, 0;
    return c;
  }();
  return C;
}

const Mat4& matrix_Cminus() {
  static const Mat4 C = [] {
    Mat4 c;
    c << 0, -1, 0, 0, -1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1;
    return c;
  }();
  return C;
}

Mat4 mtilde_plus(double u, const RhContext& ctx) {
  if (u == 0) throw Error(ErrorCode::OutOfDomain, "mtilde at u = 0");
  Mat4 M = solve_M(cplx(0, u), ctx).M;
  return M.inverse().transpose() * matrix_Cplus();
}

double mtilde_frame_error(double u, const RhContext& ctx, int order) {
  if (!(u > 0)) throw Error(ErrorCode::OutOfDomain, "frame check needs u > 0");
  cplx zeta(0, u);
  auto sol = solve_M(zeta, ctx);
  // M^{-T} = hat^{-T} diag(e^{-logs}); compare after removing e^{-chi} in the permuted order of C+
  auto chi = frame_exponents(zeta, ctx.s, ctx.t, Branch::Plus);
  Mat4 Mt = sol.Ms.hat.inverse().transpose();
  for (int j = 0; j < 4; ++j) Mt.col(j) *= std::exp(-sol.Ms.logs(j) + chi[j]);
  Mt = Mt * matrix_Cplus();
  Vec4 B = frame_B(zeta, Branch::Plus);
  Mat4 ref = B.cwiseInverse().asDiagonal() * matrix_A().inverse() * matrix_Cplus();
  if (order >= 1) ref = (Mat4::Identity() + frame_N1(ctx.s, ctx.t) / zeta).inverse().transpose() * ref;
  return maxabs(Mt - ref) / maxabs(ref);
}

std::vector<JumpResidual> jump_residuals(const RhContext& ctx, const std::vector<double>& radii) {
  std::vector<JumpResidual> out;
  for (int k = 0; k < 10; ++k)
    for (double r : radii) {
      const double phi = ray_angle(k);
      cplx zeta = r * std::exp(I * phi);
      char plus = region_of(zeta);
      // the clockwise neighbour
      char minus = region_of(r * std::exp(I * (phi - 1e-3)));
      auto Mp = solve_canonical(zeta, region_half(plus), ctx, SolveFamily::Rows).times(region_factor(plus));
      auto Mm = solve_canonical(zeta, region_half(minus), ctx, SolveFamily::Cols)
                    .times(region_factor(minus) * jump_matrix(k));
      // compare in the column scale of M_+
      Mat4 a = Mp.hat, b = Mm.hat;
      for (int j = 0; j < 4; ++j) b.col(j) *= std::exp(Mm.logs(j) - Mp.logs(j));
      out.push_back({k, r, maxabs(a - b) / maxabs(a)});
    }
  return out;
}

double connection_residual(cplx zeta, const RhContext& ctx) {
  auto Mc = solve_canonical(zeta, 1, ctx, SolveFamily::Auto);
  auto Mh = solve_canonical(zeta, -1, ctx, SolveFamily::Auto);
  Mat4 T = Mat4::Identity() - E(1, 3) - E(1, 4) - E(2, 3) - E(2, 4);
  Mat4 X = Mc.hat.inverse() * Mh.hat;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) X(i, j) *= std::exp(Mh.logs(j) - Mc.logs(i));
  return maxabs(X - T);
}

}  // namespace tmm
