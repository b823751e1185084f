#include "tmm/surface.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

namespace tmm {

namespace {

constexpr double kTrackEps = 1e-7;

// relative offset used to label boundary values; larger near 0 where the
// roots pair up and rounding noise would otherwise decide the ordering
double label_eps(cplx z) {
  double r = std::abs(z);
  return r < 0.1 ? 1e-3 * r : kTrackEps * r;
}

double perm_cost(const std::vector<cplx>& a, const std::vector<cplx>& b, const std::vector<int>& perm) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[perm[i]]);
  return s;
}

// best permutation P with b[P[i]] ~ a[i]
std::vector<int> match(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<int> perm(a.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
  std::vector<int> best = perm;
  double bc = perm_cost(a, b, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    double c = perm_cost(a, b, perm);
    if (c < bc) {
      bc = c;
      best = perm;
    }
  }
  return best;
}

cplx side_offset(cplx z, int side, double eps) {
  bool on_real = std::abs(z.imag()) <= 1e-300 + 1e-15 * std::abs(z.real());
  bool on_imag = std::abs(z.real()) <= 1e-300 + 1e-15 * std::abs(z.imag());
  if (on_real) return cplx(0.0, side * eps);
  if (on_imag) return cplx(-side * eps, 0.0);
  throw Error(ErrorCode::PathOnCut, "boundary value requested off the axes");
}

std::vector<cplx> w_poly(cplx z, const SurfaceParams& p) {
  double g3 = std::pow(p.gamma, 3);
  return {cplx(g3 * g3), cplx(0.0), cplx(2 * g3), -z};
}

std::array<cplx, 4> sorted_w(cplx z, const SurfaceParams& p) {
  auto r = monic_roots(w_poly(z, p));
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
  return {r[0], r[1], r[2], r[3]};
}

// shift rule for the lambda functions
bool lambda_shift(int j, Quadrant q) {
  bool upper = (q == Quadrant::I || q == Quadrant::II);
  if (j == 0 || j == 3) return !upper;
  return upper;
}

Quadrant side_quadrant(cplx z, int side) {
  cplx zz = z + side_offset(z, side, 1.0) * std::max(1.0, std::abs(z)) * 1e-3;
  return quadrant_of(zz);
}

template <class F>
cplx integrate_c(F f, double a, double b, double tol = 1e-11) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 10, tol, &err);
}

std::vector<cplx> cubic_roots(cplx z, double alpha, double tau) {
  return monic_roots({-tau * z, cplx(alpha), cplx(0.0)});
}

std::array<cplx, 3> order_real(double x, double alpha, double tau) {
  auto r = cubic_roots(cplx(x), alpha, tau);
  std::array<cplx, 3> s;
  for (int i = 0; i < 3; ++i) s[i] = cplx(r[i].real(), 0.0);
  std::sort(s.begin(), s.end(), [&](cplx a, cplx b) {
    return W_pot(a.real(), alpha) - tau * x * a.real() < W_pot(b.real(), alpha) - tau * x * b.real();
  });
  return s;
}

double min_sep(const std::vector<cplx>& r) {
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = i + 1; j < r.size(); ++j) m = std::min(m, std::abs(r[i] - r[j]));
  return m;
}

// follow the ordered roots along a segment; the step is cut whenever the
// matching is not clearly unambiguous
void track_segment(std::array<cplx, 3>& cur, cplx za, cplx zb, double alpha, double tau) {
  double s = 0.0, ds = 1.0 / 32;
  int guard = 0;
  while (s < 1.0) {
    double sn = std::min(1.0, s + ds);
    auto r = cubic_roots(za + (zb - za) * sn, alpha, tau);
    std::vector<cplx> a(cur.begin(), cur.end());
    auto P = match(a, r);
    double moved = 0;
    for (int i = 0; i < 3; ++i) moved = std::max(moved, std::abs(r[P[i]] - cur[i]));
    if (moved < 0.25 * min_sep(r) || ds < 1e-12) {
      for (int i = 0; i < 3; ++i) cur[i] = r[P[i]];
      s = sn;
      ds = std::min(0.125, ds * 2);
    } else {
      ds *= 0.5;
    }
    if (++guard > 200000) throw Error(ErrorCode::IntegrationFailure, "theta branch tracking stalled");
  }
}

// continue the real-axis ordering from x0 to z, leaving the axis vertically
// so the branch points +-x* are never passed closely
std::array<cplx, 3> track_s(double x0, cplx z, double alpha, double tau) {
  auto cur = order_real(x0, alpha, tau);
  double up = z.imag() >= 0 ? 1.0 : -1.0;
  double h = std::max(0.5, 0.5 * std::abs(z.imag()));
  cplx mid(x0, up * h);
  track_segment(cur, cplx(x0), mid, alpha, tau);
  track_segment(cur, mid, z, alpha, tau);
  return cur;
}

}  // namespace

const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::I: return "I";
    case Quadrant::II: return "II";
    case Quadrant::III: return "III";
    case Quadrant::IV: return "IV";
    case Quadrant::PosReal: return "R+";
    case Quadrant::NegReal: return "R-";
    case Quadrant::PosImag: return "iR+";
    case Quadrant::NegImag: return "iR-";
    case Quadrant::Origin: return "0";
  }
  return "?";
}

Quadrant quadrant_of(cplx z) {
  double x = z.real(), y = z.imag();
  if (x == 0 && y == 0) return Quadrant::Origin;
  if (y == 0) return x > 0 ? Quadrant::PosReal : Quadrant::NegReal;
  if (x == 0) return y > 0 ? Quadrant::PosImag : Quadrant::NegImag;
  if (x > 0) return y > 0 ? Quadrant::I : Quadrant::IV;
  return y > 0 ? Quadrant::II : Quadrant::III;
}

double gamma_residual(double alpha, double tau, double g) {
  return 3.0 / g - 9.0 * g * g + 5.0 * std::pow(tau, 4.0 / 3.0) * g - alpha * std::pow(tau, 2.0 / 3.0);
}

namespace {
bool newton_gamma(double alpha, double tau, double& g) {
  double t43 = std::pow(tau, 4.0 / 3.0);
  double x = g;
  for (int it = 0; it < 50; ++it) {
    double f = gamma_residual(alpha, tau, x);
    double fp = -3.0 / (x * x) - 18.0 * x + 5.0 * t43;
    if (fp == 0 || !std::isfinite(fp)) return false;
    double dx = f / fp;
    x -= dx;
    if (!(x > 0) || !std::isfinite(x)) return false;
    if (std::abs(dx) < 1e-15 * std::max(1.0, x)) {
      if (std::abs(x - g) > 0.5 * std::max(1.0, g)) return false;
      g = x;
      return true;
    }
  }
  return false;
}
}  // namespace

double gamma_of(double alpha, double tau) {
  if (!(tau > 0)) throw Error(ErrorCode::OutOfDomain, "gamma_of: tau must be positive");
  const double a0 = -1.0, t0 = 1.0;
  double g = 1.0, s = 0.0, ds = 0.125;
  while (s < 1.0) {
    double sn = std::min(1.0, s + ds);
    double gt = g;
    if (newton_gamma(a0 + sn * (alpha - a0), t0 + sn * (tau - t0), gt)) {
      g = gt;
      s = sn;
      ds = std::min(0.25, ds * 1.5);
    } else {
      ds *= 0.5;
      if (ds < 1e-10) {
        std::ostringstream os;
        os << "gamma_of: root lost after (alpha,tau)=(" << a0 + s * (alpha - a0) << "," << t0 + s * (tau - t0) << ")";
        throw Error(ErrorCode::NoRootOnBranch, os.str());
      }
    }
  }
  return g;
}

SurfaceParams make_surface(double alpha, double tau) {
  SurfaceParams p;
  p.alpha = alpha;
  p.tau = tau;
  p.gamma = gamma_of(alpha, tau);
  p.c = 16.0 / (3.0 * std::sqrt(3.0)) * std::pow(p.gamma, 1.5);
  return p;
}

std::pair<double, double> scaled_params(double a, double b, long n) {
  if (n < 1) throw Error(ErrorCode::ConfigError, "scaled_params: n must be >= 1");
  double n13 = std::pow(double(n), -1.0 / 3.0);
  double n23 = n13 * n13;
  return {-1.0 + 2.0 * a * n13 - b * n23, 1.0 + a * n13 + 2.0 * b * n23};
}

std::vector<cplx> monic_roots(const std::vector<cplx>& low) {
  const int n = int(low.size());
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -low[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<cplx> r(n);
  for (int i = 0; i < n; ++i) {
    cplx x = es.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      cplx f = 1.0, fp = 0.0;
      for (int k = n - 1; k >= 0; --k) {
        fp = fp * x + f;
        f = f * x + low[k];
      }
      if (fp == cplx(0.0)) break;
      cplx dx = f / fp;
      if (!std::isfinite(std::abs(dx)) || std::abs(dx) > 1e-3 * (1.0 + std::abs(x))) break;
      x -= dx;
    }
    r[i] = x;
  }
  return r;
}

std::array<cplx, 4> w_branches(cplx z, const SurfaceParams& p) {
  auto w = sorted_w(z, p);
  double scale = std::max(1.0, std::abs(z));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(w[i] - w[j]) < 1e-9 * scale)
        throw Error(ErrorCode::DegenerateRoots, "w_branches: coalescing roots (branch point)");
  return w;
}

cplx xi_of_w(cplx w, const SurfaceParams& p) {
  double g3 = std::pow(p.gamma, 3);
  double t43 = std::pow(p.tau, 4.0 / 3.0);
  cplx w2 = w * w;
  return (w2 * w2 + (3 * g3 - 1) * w2 + t43 * std::pow(p.gamma, 5)) / (w * (w2 + g3));
}

std::array<cplx, 4> xi_branches(cplx z, const SurfaceParams& p) {
  auto w = w_branches(z, p);
  std::array<cplx, 4> x;
  for (int j = 0; j < 4; ++j) x[j] = xi_of_w(w[j], p);
  return x;
}

std::array<cplx, 4> w_boundary(cplx z, int side, const SurfaceParams& p) {
  double eps = label_eps(z);
  auto off = sorted_w(z + side_offset(z, side, eps), p);
  auto r = monic_roots(w_poly(z, p));
  auto P = match(std::vector<cplx>(off.begin(), off.end()), r);
  return {r[P[0]], r[P[1]], r[P[2]], r[P[3]]};
}

std::array<cplx, 4> xi_boundary(cplx z, int side, const SurfaceParams& p) {
  auto w = w_boundary(z, side, p);
  std::array<cplx, 4> x;
  for (int j = 0; j < 4; ++j) x[j] = xi_of_w(w[j], p);
  return x;
}

std::array<cplx, 4> lambda_branches(cplx z, const SurfaceParams& p) {
  Quadrant q = quadrant_of(z);
  if (q != Quadrant::I && q != Quadrant::II && q != Quadrant::III && q != Quadrant::IV)
    throw Error(ErrorCode::PathOnCut, "lambda_branches: z must lie inside an open quadrant");
  std::array<cplx, 4> out;
  for (int j = 0; j < 4; ++j) {
    // substitution zeta = z v^2 keeps the integrand bounded at 0
    auto f = [&](double v) { return xi_branches(z * (v * v), p)[j] * (2.0 * v) * z; };
    out[j] = integrate_c(f, 0.0, 1.0);
    if (lambda_shift(j, q)) out[j] += I * pi;
  }
  return out;
}

std::array<cplx, 4> lambda_boundary(cplx z, int side, const SurfaceParams& p) {
  if (z == cplx(0.0)) throw Error(ErrorCode::PathOnCut, "lambda_boundary: z = 0");
  Quadrant q = side_quadrant(z, side);
  bool real_axis = quadrant_of(z) == Quadrant::PosReal || quadrant_of(z) == Quadrant::NegReal;
  std::vector<double> br{0.0, 1.0};
  if (real_axis && std::abs(z) > p.c) br = {0.0, std::sqrt(p.c / std::abs(z)), 1.0};
  std::array<cplx, 4> out;
  for (int j = 0; j < 4; ++j) {
    auto f = [&](double v) { return xi_boundary(z * (v * v), side, p)[j] * (2.0 * v) * z; };
    cplx acc = 0;
    for (size_t k = 0; k + 1 < br.size(); ++k) acc += integrate_c(f, br[k], br[k + 1]);
    out[j] = acc + (lambda_shift(j, q) ? I * pi : cplx(0.0));
  }
  return out;
}

SheetValues sheet_values(cplx z, const SurfaceParams& p) {
  SheetValues sv;
  sv.z = z;
  sv.quadrant = quadrant_of(z);
  sv.w = w_branches(z, p);
  for (int j = 0; j < 4; ++j) sv.xi[j] = xi_of_w(sv.w[j], p);
  sv.lambda = lambda_branches(z, p);
  return sv;
}

cplx near_zero_constant(const SurfaceParams& p) {
  double g = p.gamma;
  return std::exp(3.0 * I * pi / 4.0) * std::pow(g, 0.25) *
         (-2 * g * g + 1 / g + std::pow(p.tau, 4.0 / 3.0) * g);
}

std::array<cplx, 3> near_zero_fgh(const SurfaceParams& p) {
  double g = p.gamma, t43 = std::pow(p.tau, 4.0 / 3.0);
  cplx F = 2.0 * std::exp(3.0 * I * pi / 4.0) * std::pow(g, 0.25) * (-2 * g * g + 1 / g + t43 * g);
  cplx G = I * std::pow(g, -0.5) * (1.5 * g * g - 0.25 / g - 1.25 * t43 * g);
  cplx H = std::exp(I * pi / 4.0) * std::pow(g, -1.25) * (0.5 * g * g - 1.0 / (12 * g) + 0.25 * t43 * g);
  return {F, G, H};
}

NearZeroFit fit_lambda_near_zero(const SurfaceParams& p, double rmin, double rmax) {
  const int npts = 48, nb = 10;
  const cplx dir = std::exp(I * pi / 4.0);
  Eigen::MatrixXcd A(npts, nb);
  Eigen::VectorXcd b(npts);
  for (int i = 0; i < npts; ++i) {
    double r = rmin * std::pow(rmax / rmin, double(i) / (npts - 1));
    cplx z = r * dir;
    cplx sq = std::sqrt(z);
    cplx pw = sq;
    for (int k = 0; k < nb; ++k) {
      A(i, k) = pw;
      pw *= sq;
    }
    b(i) = lambda_branches(z, p)[0];
  }
  Eigen::VectorXcd x = A.colPivHouseholderQr().solve(b);
  NearZeroFit f;
  f.F0 = x(0);
  f.G0 = x(1);
  f.H0 = x(2);
  f.K0 = x(3);
  f.rms = (A * x - b).norm() / std::sqrt(double(npts));
  return f;
}

double x_star(double alpha, double tau) {
  if (!(alpha < 0)) return 0.0;
  return 2.0 / tau * std::pow(-alpha / 3.0, 1.5);
}

double W_pot(double y, double alpha) { return y * y * y * y / 4.0 + alpha * y * y / 2.0; }
cplx W_pot(cplx y, double alpha) { return y * y * y * y / 4.0 + alpha * y * y / 2.0; }

ThetaValues theta_branches(cplx z, double alpha, double tau) {
  if (!(alpha < 0) || !(tau > 0))
    throw Error(ErrorCode::OutOfDomain, "theta_branches: requires alpha < 0 < tau");
  double xs = x_star(alpha, tau);
  ThetaValues tv;
  tv.z = z;
  if (z.imag() == 0.0 && std::abs(z.real()) < xs) {
    tv.s = order_real(z.real(), alpha, tau);
  } else {
    // limits: +i0 on real cuts, Re z > 0 side on iR
    cplx target = z;
    if (z.imag() == 0.0) target = z + cplx(0.0, kTrackEps * std::max(1.0, std::abs(z)));
    if (z.real() == 0.0) target = z + cplx(kTrackEps * std::max(1.0, std::abs(z)), 0.0);
    double x0 = target.real() >= 0 ? 0.5 * xs : -0.5 * xs;
    auto tr = track_s(x0, target, alpha, tau);
    if (target != z) {
      auto ex = cubic_roots(z, alpha, tau);
      auto P = match(std::vector<cplx>(tr.begin(), tr.end()), ex);
      for (int i = 0; i < 3; ++i) tr[i] = ex[P[i]];
    }
    tv.s = tr;
  }
  for (int j = 0; j < 3; ++j) tv.theta[j] = -W_pot(tv.s[j], alpha) + tau * z * tv.s[j];
  return tv;
}

std::array<cplx, 3> s_boundary(cplx z, int side, double alpha, double tau) {
  double eps = kTrackEps * std::abs(z);
  cplx zo = z + side_offset(z, side, eps);
  double xs = x_star(alpha, tau);
  double x0 = zo.real() >= 0 ? 0.5 * xs : -0.5 * xs;
  auto tr = track_s(x0, zo, alpha, tau);
  auto ex = cubic_roots(z, alpha, tau);
  auto P = match(std::vector<cplx>(tr.begin(), tr.end()), ex);
  return {ex[P[0]], ex[P[1]], ex[P[2]]};
}

const char* to_string(PhaseCase c) {
  switch (c) {
    case PhaseCase::CaseI: return "CaseI";
    case PhaseCase::CaseII: return "CaseII";
    case PhaseCase::CaseIII: return "CaseIII";
    case PhaseCase::CaseIV: return "CaseIV";
    case PhaseCase::BoundaryI_II: return "BoundaryI_II";
    case PhaseCase::BoundaryIII_IV: return "BoundaryIII_IV";
    case PhaseCase::Multicritical: return "Multicritical";
    case PhaseCase::UndeterminedII_III: return "UndeterminedII_III";
  }
  return "?";
}

PhaseCase classify_phase(double alpha, double tau) {
  if (!(tau > 0)) throw Error(ErrorCode::OutOfDomain, "classify_phase: tau must be positive");
  const double tol = 1e-12;
  if (std::abs(alpha + 1) < tol && std::abs(tau - 1) < tol) return PhaseCase::Multicritical;
  if (alpha <= -1) {
    double h = std::sqrt(-1.0 / alpha);
    if (std::abs(tau - h) <= tol) return PhaseCase::BoundaryIII_IV;
    if (tau > h) return PhaseCase::CaseIII;
    if (alpha < -2) return PhaseCase::CaseIV;
    // I/IV separation has no boundary tag; the curve itself is reported as IV
    return tau < std::sqrt(alpha + 2) - tol ? PhaseCase::CaseI : PhaseCase::CaseIV;
  }
  double g = std::sqrt(alpha + 2);
  if (std::abs(tau - g) <= tol) return PhaseCase::BoundaryI_II;
  if (tau < g) return PhaseCase::CaseI;
  return alpha >= 0 ? PhaseCase::CaseII : PhaseCase::UndeterminedII_III;
}

}  // namespace tmm
