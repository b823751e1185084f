#include "tmm/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace tmm {

namespace {

// quadratic through three nodes
template <class F>
cplx lagrange3(F f, double x, std::array<double, 3> n) {
  cplx acc = 0;
  for (int i = 0; i < 3; ++i) {
    double w = 1;
    for (int j = 0; j < 3; ++j)
      if (j != i) w *= (x - n[j]) / (n[i] - n[j]);
    acc += w * f(n[i]);
  }
  return acc;
}

// L M^{-1}(x) M(y) R for scaled M's, exponentiating only differences of logs
cplx bilinear(const Vec4& L, const ScaledMat<4>& Mx, const ScaledMat<4>& My, const Vec4& R) {
  Mat4 X = Mx.hat.inverse() * My.hat;
  cplx acc = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (L(i) != 0.0 && R(j) != 0.0) acc += L(i) * R(j) * X(i, j) * std::exp(My.logs(j) - Mx.logs(i));
  return acc;
}

// L M^{-1} U M R
cplx derivative_form(const Vec4& L, const ScaledMat<4>& M, const Mat4& U, const Vec4& R) {
  Mat4 X = M.hat.inverse() * U * M.hat;
  cplx acc = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (L(i) != 0.0 && R(j) != 0.0) acc += L(i) * R(j) * X(i, j) * std::exp(M.logs(j) - M.logs(i));
  return acc;
}

double real_checked(cplx z, double& max_imag) {
  max_imag = std::max(max_imag, std::abs(z.imag()));
  return z.real();
}

const double two53 = std::pow(2.0, 5.0 / 3.0);

}  // namespace

// ---------------- K_cr

CrKernel::CrKernel(CrParams p, const RhSolveOptions& opts) : ctx_(p.s, p.t, opts) {}

const ScaledMat<4>& CrKernel::M(double u) {
  auto it = cache_.find(u);
  if (it != cache_.end()) return it->second;
  auto sol = solve_M(cplx(0, u), ctx_);
  max_cost = std::max(max_cost, sol.diagnostics.cost);
  return cache_.emplace(u, sol.Ms).first->second;
}

cplx CrKernel::raw_nz(double u, double v) {
  static const Vec4 L(-1, 1, 0, 0), R(1, 1, 0, 0);
  return bilinear(L, M(u), M(v), R) / (2.0 * pi * I * (u - v));
}

cplx CrKernel::raw_diag_nz(double u) {
  static const Vec4 L(1, -1, 0, 0), R(1, 1, 0, 0);
  return derivative_form(L, M(u), lax_U(cplx(0, u), ctx_.C), R) / (2 * pi);
}

cplx CrKernel::raw_diag(double u) {
  if (std::abs(u) < origin_eps)
    return lagrange3([&](double x) { return raw_diag_nz(x); }, u, {-2 * origin_eps, 2 * origin_eps, 3 * origin_eps});
  return raw_diag_nz(u);
}

cplx CrKernel::raw(double u, double v) {
  if (u == v) return raw_diag(u);
  const std::array<double, 3> nodes{-2 * origin_eps, 2 * origin_eps, 3 * origin_eps};
  if (std::abs(u) < origin_eps) return lagrange3([&](double x) { return raw(x, v); }, u, nodes);
  if (std::abs(v) < origin_eps) return lagrange3([&](double x) { return raw(u, x); }, v, nodes);
  return raw_nz(u, v);
}

double CrKernel::operator()(double u, double v) { return real_checked(raw(u, v), max_imag); }
double CrKernel::diag(double u) { return real_checked(raw_diag(u), max_imag); }

double kernel_cr(double u, double v, const CrParams& p, const RhSolveOptions& opts) {
  CrKernel K(p, opts);
  return K(u, v);
}

double kernel_cr_diag(double u, const CrParams& p, const RhSolveOptions& opts) {
  CrKernel K(p, opts);
  return K.diag(u);
}

// ---------------- K_tac

TacKernel::TacKernel(TacParams p, const RhSolveOptions& opts)
    : p_(p), scale_(std::cbrt(p.r * p.r)), ctx_(p.s / std::cbrt(p.r), 0.0, opts) {
  if (!(p.r > 0)) throw Error(ErrorCode::DomainRestriction, "tacnode kernel needs r > 0");
}

const ScaledMat<4>& TacKernel::M(double u) {
  auto it = cache_.find(u);
  if (it != cache_.end()) return it->second;
  // boundary value from the upper side of the positive axis
  auto sol = solve_M(cplx(u, 0), ctx_);
  return cache_.emplace(u, sol.Ms).first->second;
}

cplx TacKernel::raw(double u, double v) {
  if (!(u > 0 && v > 0)) throw Error(ErrorCode::DomainRestriction, "tacnode kernel is defined for u, v > 0");
  if (u == v) return raw_diag(u);
  static const Vec4 L(-1, 0, 1, 0), R(1, 0, 1, 0);
  double a = scale_ * u, b = scale_ * v;
  return scale_ * bilinear(L, M(b), M(a), R) / (2.0 * pi * I * (a - b));
}

cplx TacKernel::raw_diag(double u) {
  if (!(u > 0)) throw Error(ErrorCode::DomainRestriction, "tacnode kernel is defined for u > 0");
  static const Vec4 L(-1, 0, 1, 0), R(1, 0, 1, 0);
  double a = scale_ * u;
  return scale_ * derivative_form(L, M(a), lax_U(cplx(a, 0), ctx_.C), R) / (2.0 * pi * I);
}

double TacKernel::operator()(double u, double v) { return real_checked(raw(u, v), max_imag); }
double TacKernel::diag(double u) { return real_checked(raw_diag(u), max_imag); }

double kernel_tac(double u, double v, const TacParams& p, const RhSolveOptions& opts) {
  TacKernel K(p, opts);
  return K(u, v);
}

double kernel_tac_diag(double u, const TacParams& p, const RhSolveOptions& opts) {
  TacKernel K(p, opts);
  return K.diag(u);
}

// ---------------- comparators

double cr_diag_asym(double u, const CrParams& p) {
  const double su = std::sqrt(u);
  return su / (std::sqrt(2.0) * pi) + p.t / pi + p.s / (std::sqrt(2.0) * pi * su);
}

double tac_phase(double u, const TacParams& p) {
  // psi_2 on the + side: (-u)^{1/2} = -i sqrt(u)
  const double su = std::sqrt(u);
  return 4.0 / 3.0 * p.r * u * su - 4 * p.s * su;
}

double tac_diag_asym(double u, const TacParams& p, bool with_oscillation) {
  const double su = std::sqrt(u);
  double v = p.r * su / pi - p.s / (pi * su);
  if (with_oscillation) v -= std::cos(tac_phase(u, p)) / (4 * pi * u);
  return v;
}

OscillationFit fit_oscillation(const std::vector<double>& u, const std::vector<double>& resid,
                               const std::vector<double>& phase) {
  const int n = int(u.size());
  Eigen::MatrixXd X(n, 4);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    X(i, 0) = std::cos(phase[i]);
    X(i, 1) = std::sin(phase[i]);
    X(i, 2) = 1;
    X(i, 3) = 1 / std::sqrt(u[i]);
    y(i) = 4 * pi * u[i] * resid[i];
  }
  Eigen::VectorXd c = X.colPivHouseholderQr().solve(y);
  return {c(0), c(1), c(2), c(3), std::hypot(c(0), c(1))};
}

double growth_ratio(const std::vector<double>& x) {
  const size_t n = x.size(), k = std::max<size_t>(1, n / 3);
  double a = 0, b = 0;
  for (size_t i = 0; i < k; ++i) a = std::max(a, std::abs(x[i]));
  for (size_t i = n - k; i < n; ++i) b = std::max(b, std::abs(x[i]));
  return b / a;
}

// ---------------- Painleve II Psi

PiiPsi::PiiPsi(double nu_, const HmSolution& hm) : nu(nu_) {
  auto p = hm(nu);
  q = p.q;
  qprime = p.qprime;
  Mat2 s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  // beta = -iq/2, beta' = -iq'/2
  const cplx beta = -0.5 * I * q, betap = -0.5 * I * qprime;
  Mat2 A0 = -4.0 * I * s3, A1 = 8.0 * I * beta * s1;
  Mat2 A2 = -I * (nu - 8.0 * beta * beta) * s3 - 4.0 * I * betap * s2;
  ser_ = FormalSeries<2>::build({A0, A1, A2}, 40);
  P_.c = {A2, A1, A0};
  R0 = 8;
  for (double R : {3.0, 4.0, 5.0, 6.0, 8.0}) {
    double best = 1e300;
    for (size_t k = 1; k < ser_.Y.size(); ++k) best = std::min(best, maxabs(ser_.Y[k]) * std::pow(R, -double(k)));
    series_error = best;
    R0 = R;
    if (best < 1e-14) break;
  }
}

Mat2 PiiPsi::A(cplx zeta) const { return P_(zeta); }

ScaledVec<2> PiiPsi::column_scaled(cplx zeta, int col, double angle) const {
  cplx z0 = R0 * std::exp(I * angle);
  auto ev = ser_.eval(z0);
  ScaledVec<2> y;
  y.v = ev.Ys.col(col);
  y.logs = ev.expo(col);
  double n = maxabs(y.v);
  y.v /= n;
  y.logs += std::log(n);
  cplx mid = 0.3 * std::exp(I * angle);
  taylor_segment(P_, y, z0, mid);
  taylor_segment(P_, y, mid, zeta);
  return y;
}

Vec2 PiiPsi::column(cplx zeta, int col, double angle) const {
  auto y = column_scaled(zeta, col, angle);
  return y.v * std::exp(y.logs);
}

int PiiPsi::region_of(cplx zeta) {
  double th = std::arg(zeta);
  if (th >= -pi / 6 - 1e-13 && th < pi / 6 - 1e-13) return 0;
  if (th >= pi / 6 - 1e-13 && th < 5 * pi / 6 - 1e-13) return 1;
  if (th >= -5 * pi / 6 - 1e-13 && th < -pi / 6 - 1e-13) return 3;
  return 2;
}

Mat2 PiiPsi::jump(int k) {
  Mat2 J;
  switch (k) {
    case 1: J << 1, 0, 1, 1; break;
    case 2: J << 1, 0, -1, 1; break;
    case 3: J << 1, 1, 0, 1; break;
    case 4: J << 1, -1, 0, 1; break;
    default: throw Error(ErrorCode::ConfigError, "PII jump index out of range");
  }
  return J;
}

Mat2 PiiPsi::in_region(cplx zeta, int region) const {
  // recessive directions: column 1 where sin 3theta < 0, column 2 where sin 3theta > 0
  static const std::array<std::array<double, 2>, 4> start{{{-pi / 6, pi / 6},
                                                          {pi / 2, pi / 6},
                                                          {-5 * pi / 6, 5 * pi / 6},
                                                          {-5 * pi / 6, -pi / 2}}};
  Mat2 P;
  P.col(0) = column(zeta, 0, start[region][0]);
  P.col(1) = column(zeta, 1, start[region][1]);
  return P;
}

Mat2 PiiPsi::operator()(cplx zeta) const { return in_region(zeta, region_of(zeta)); }

Mat2 psi_pii(cplx zeta, double nu, const HmSolution& hm) { return PiiPsi(nu, hm)(zeta); }

PiiKernel::PiiKernel(double nu, PiiOrder order) : psi_(nu), order_(order) {}

Vec2 PiiKernel::col(double x) {
  auto it = cache_.find(x);
  if (it != cache_.end()) return it->second;
  // Psi (1,1)^T on the real line is the first column of the upper-sector solution
  Vec2 v = psi_.column(cplx(x, 0), 0, pi / 2);
  cache_.emplace(x, v);
  return v;
}

cplx PiiKernel::raw(double x, double y) {
  if (x == y) return raw_diag(x);
  if (order_ == PiiOrder::Swapped) std::swap(x, y);
  Vec2 ax = col(x), ay = col(y);
  return (ax(1) * ay(0) - ax(0) * ay(1)) / (2.0 * pi * I * (x - y));
}

cplx PiiKernel::raw_diag(double x) {
  Vec2 a = col(x);
  Vec2 d = psi_.A(cplx(x, 0)) * a;
  return (a(0) * d(1) - a(1) * d(0)) / (2.0 * pi * I);
}

double PiiKernel::operator()(double x, double y) { return real_checked(raw(x, y), max_imag); }
double PiiKernel::diag(double x) { return real_checked(raw_diag(x), max_imag); }

double kernel_pii(double x, double y, double nu, PiiOrder order) {
  PiiKernel K(nu, order);
  return K(x, y);
}

PiiChecks pii_checks(double nu) {
  PiiPsi P(nu);
  PiiChecks c{};
  // zeta Psi12 e^{-i(4/3)zeta^3 - i nu zeta} = q + O(1/zeta), extrapolated from the upper axis
  std::vector<cplx> xs, ys;
  for (double R : {2.0, 2.5, 3.0, 3.5}) {
    cplx z(0, R);
    auto y = P.column_scaled(z, 1, pi / 6);
    xs.push_back(1.0 / z);
    ys.push_back(z * y.v(0) * std::exp(y.logs - (I * 4.0 / 3.0 * z * z * z + I * nu * z)));
  }
  const int n = int(xs.size());
  for (int k = 1; k < n; ++k)
    for (int i = 0; i + k < n; ++i) ys[i] = (xs[i + k] * ys[i] - xs[i] * ys[i + 1]) / (xs[i + k] - xs[i]);
  c.q_limit = ys[0];
  c.q_recovery_error = std::abs(ys[0] - P.q);
  c.q_recovery_2i_error = std::abs(2.0 * I * ys[0] - P.q);
  // rays at pi/6, 5pi/6, -5pi/6, -pi/6 with + on the counterclockwise side
  const std::array<double, 4> ang{pi / 6, 5 * pi / 6, -5 * pi / 6, -pi / 6};
  const std::array<int, 4> plus{1, 2, 3, 0}, minus{0, 1, 2, 3};
  for (int k = 0; k < 4; ++k) {
    cplx z = std::exp(I * ang[k]);
    Mat2 Pp = P.in_region(z, plus[k]), Pm = P.in_region(z, minus[k]);
    c.jump_residual[k] = maxabs(Pp - Pm * PiiPsi::jump(k + 1)) / maxabs(Pp);
  }
  Mat2 s1;
  s1 << 0, 1, 1, 0;
  cplx z(0.4, 0.3);
  Mat2 a = s1 * P(z) * s1, b = P(-z);
  c.symmetry = maxabs(a - b) / maxabs(b);
  c.det_error = std::abs(P(z).determinant() - 1.0);
  return c;
}

// ---------------- double scaling

DoubleScaling double_scaling(double a, double sigma, double x, double y, PiiOrder order) {
  if (!(a >= 2)) throw Error(ErrorCode::OutOfDomain, "double scaling needs a >= 2");
  DoubleScaling D{};
  D.a = a;
  D.sigma = sigma;
  D.x = x;
  D.y = y;
  const double c = two53 * a;
  CrKernel K({a * a / 2, -a * (1 - sigma / (a * a))});
  PiiKernel Kp(two53 * sigma, order);
  const std::array<double, 2> pts{x, y};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      D.Ks(i, j) = c * K.raw(c * pts[i], c * pts[j]);
      D.Kp(i, j) = Kp.raw(pts[i], pts[j]);
    }
  D.det_s = std::real(D.Ks.determinant());
  D.det_p = std::real(D.Kp.determinant());
  D.gap = std::abs(D.det_s - D.det_p);
  D.R0_used = K.context().R0_used;
  D.cost = K.max_cost;
  return D;
}

double double_scaling_gap(double a, double sigma, double x, double y) { return double_scaling(a, sigma, x, y).gap; }

double double_scaling_diag_gap(double a, double sigma, double x) {
  const double c = two53 * a;
  CrKernel K({a * a / 2, -a * (1 - sigma / (a * a))});
  PiiKernel Kp(two53 * sigma);
  return std::abs(c * K.diag(c * x) - Kp.diag(x));
}

// ---------------- grids

namespace {

template <class K>
KernelGrid fill_grid(K& k, const std::vector<double>& u, const std::vector<double>& v) {
  KernelGrid g;
  g.u = u;
  g.v = v;
  g.min_diag = 1e300;
  for (double a : u) {
    std::vector<double> row;
    for (double b : v) {
      double val = a == b ? k.diag(a) : k(a, b);
      if (a == b) g.min_diag = std::min(g.min_diag, val);
      row.push_back(val);
    }
    g.values.push_back(row);
  }
  if (g.min_diag == 1e300) g.min_diag = 0;
  g.max_imag = k.max_imag;
  return g;
}

}  // namespace

KernelGrid cr_grid(const CrParams& p, const std::vector<double>& u, const std::vector<double>& v,
                   const RhSolveOptions& opts) {
  CrKernel K(p, opts);
  auto g = fill_grid(K, u, v);
  g.which = "cr";
  g.params = {{"s", p.s}, {"t", p.t}, {"R0_used", K.context().R0_used}, {"max_cost", K.max_cost}};
  return g;
}

KernelGrid tac_grid(const TacParams& p, const std::vector<double>& u, const std::vector<double>& v,
                    const RhSolveOptions& opts) {
  TacKernel K(p, opts);
  auto g = fill_grid(K, u, v);
  g.which = "tac";
  g.params = {{"r", p.r}, {"s", p.s}};
  return g;
}

KernelGrid pii_grid(double nu, const std::vector<double>& u, const std::vector<double>& v) {
  PiiKernel K(nu);
  auto g = fill_grid(K, u, v);
  g.which = "pii";
  g.params = {{"nu", nu}, {"R0", K.psi().R0}};
  return g;
}

}  // namespace tmm
