#include "tmm/measures.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

namespace tmm {

namespace {

template <class F>
double integrate_ts(F f, double a, double b, double tol = 1e-12) {
  boost::math::quadrature::tanh_sinh<double> ts(12);
  double err = 0, L1 = 0;
  double r = ts.integrate(f, a, b, tol, &err, &L1);
  if (!std::isfinite(r) || err > 1e-7 * std::max(1.0, L1))
    throw Error(ErrorCode::QuadratureFailure, "tanh-sinh quadrature did not converge");
  return r;
}

template <class F>
double integrate_gk(F f, double a, double b, double tol = 1e-12) {
  double err = 0, L1 = 0;
  double r = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, tol, &err, &L1);
  if (!std::isfinite(r) || err > 1e-7 * std::max(1.0, L1))
    throw Error(ErrorCode::QuadratureFailure, "Gauss-Kronrod quadrature did not converge");
  return r;
}

// integral over [0, Y] (sgn=+1) or [-Y, 0] (sgn=-1) with breakpoints, plus a
// fitted algebraic tail beyond Y
template <class F>
MassResult half_line_mass(F rho, double Y, const std::vector<double>& breaks) {
  MassResult m;
  m.Y = Y;
  for (int sgn : {1, -1}) {
    auto g = [&](double x) { return rho(sgn * x); };
    double core = 0;
    for (size_t k = 0; k + 1 < breaks.size(); ++k) {
      double a = breaks[k], b = breaks[k + 1];
      if (k == 0 || b <= 2.0)
        core += integrate_ts(g, a, b, 1e-11);
      else
        core += integrate_gk(g, a, b, 1e-11);
    }
    // tail model A x^{-5/3} + B x^{-7/3} fitted on [Y/2, Y]
    const int n = 16;
    Eigen::MatrixXd M(n, 2);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) {
      double x = Y * (0.5 + 0.5 * i / (n - 1));
      M(i, 0) = std::pow(x, -5.0 / 3.0);
      M(i, 1) = std::pow(x, -7.0 / 3.0);
      v(i) = g(x);
    }
    Eigen::Vector2d ab = M.colPivHouseholderQr().solve(v);
    double tail = 1.5 * ab(0) * std::pow(Y, -2.0 / 3.0) + 0.75 * ab(1) * std::pow(Y, -4.0 / 3.0);
    m.core += core;
    m.tail += tail;
    m.A += 0.5 * ab(0);
    m.B += 0.5 * ab(1);
  }
  m.mass = m.core + m.tail;
  return m;
}

}  // namespace

const char* to_string(MeasureId m) {
  switch (m) {
    case MeasureId::mu1: return "mu1";
    case MeasureId::mu2: return "mu2";
    case MeasureId::mu3: return "mu3";
    case MeasureId::sigma2: return "sigma2";
  }
  return "?";
}

MeasureId measure_from_string(const std::string& s) {
  if (s == "mu1") return MeasureId::mu1;
  if (s == "mu2") return MeasureId::mu2;
  if (s == "mu3") return MeasureId::mu3;
  if (s == "sigma2") return MeasureId::sigma2;
  throw Error(ErrorCode::ConfigError, "unknown measure '" + s + "'");
}

double density_mu1(double x, const SurfaceParams& p) {
  if (std::abs(x) >= p.c) throw Error(ErrorCode::OutsideSupport, "density_mu1: |x| >= c");
  if (x == 0.0) {
    if (std::abs(near_zero_constant(p)) < 1e-12) return 0.0;
    throw Error(ErrorCode::OutOfDomain, "density_mu1: density is singular at 0 off criticality");
  }
  return xi_boundary(cplx(x), +1, p)[0].imag() / pi;
}

cplx density_mu2_complex(double y, const SurfaceParams& p) {
  if (y == 0.0) throw Error(ErrorCode::OutOfDomain, "density_mu2: y = 0");
  cplx z(0.0, y);
  auto xp = xi_boundary(z, +1, p), xm = xi_boundary(z, -1, p);
  auto sp = s_boundary(z, +1, p.alpha, p.tau), sm = s_boundary(z, -1, p.alpha, p.tau);
  return ((xp[1] - xm[1]) - p.tau * (sp[0] - sm[0])) / (2.0 * pi);
}

double density_mu2(double y, const SurfaceParams& p) { return density_mu2_complex(y, p).real(); }

cplx density_mu3_complex(double x, const SurfaceParams& p) {
  if (x == 0.0) throw Error(ErrorCode::OutOfDomain, "density_mu3: x = 0");
  cplx z(x, 0.0);
  auto xp = xi_boundary(z, +1, p), xm = xi_boundary(z, -1, p);
  auto sp = s_boundary(z, +1, p.alpha, p.tau), sm = s_boundary(z, -1, p.alpha, p.tau);
  return ((xp[2] - xm[2]) - p.tau * (sp[1] - sm[1])) / (2.0 * pi * I);
}

double density_mu3(double x, const SurfaceParams& p) { return density_mu3_complex(x, p).real(); }

double sigma2_density(double y, double alpha, double tau) {
  auto r = monic_roots({-tau * cplx(0.0, y), cplx(alpha), cplx(0.0)});
  double m = r[0].real();
  for (auto& s : r) m = std::max(m, s.real());
  return tau / pi * m;
}

double density(MeasureId m, double x, const SurfaceParams& p) {
  switch (m) {
    case MeasureId::mu1: return density_mu1(x, p);
    case MeasureId::mu2: return density_mu2(x, p);
    case MeasureId::mu3: return density_mu3(x, p);
    case MeasureId::sigma2: return sigma2_density(x, p.alpha, p.tau);
  }
  return 0;
}

DensityGrid density_grid(MeasureId m, const std::vector<double>& pts, const SurfaceParams& p) {
  DensityGrid g;
  g.axis = (m == MeasureId::mu2 || m == MeasureId::sigma2) ? Axis::imaginary : Axis::real;
  g.points = pts;
  g.params = p;
  g.measure_id = m;
  g.values.reserve(pts.size());
  for (double x : pts) {
    double v;
    if (m == MeasureId::mu1 && std::abs(x) >= p.c)
      v = 0.0;
    else
      v = density(m, x, p);
    g.values.push_back(v);
  }
  return g;
}

MassResult mass_mu1(const SurfaceParams& p) {
  auto f = [&](double x) { return std::abs(x) >= p.c || x == 0.0 ? 0.0 : density_mu1(x, p); };
  MassResult m;
  m.core = integrate_ts(f, -p.c, 0.0) + integrate_ts(f, 0.0, p.c);
  m.mass = m.core;
  m.Y = p.c;
  return m;
}

MassResult mass_mu2(const SurfaceParams& p, double Y) {
  auto f = [&](double y) { return y == 0.0 ? 0.0 : density_mu2(y, p); };
  std::vector<double> br{0.0, 1.0, 10.0, Y};
  return half_line_mass(f, Y, br);
}

MassResult mass_mu3(const SurfaceParams& p, double Y) {
  auto f = [&](double x) { return x == 0.0 ? 0.0 : density_mu3(x, p); };
  double xs = x_star(p.alpha, p.tau);
  std::vector<double> br{0.0, xs, 1.0, 10.0, Y};
  if (!(xs > 0 && xs < 1.0)) br = {0.0, 1.0, 10.0, Y};
  return half_line_mass(f, Y, br);
}

std::pair<double, double> xi_integral_check(const SurfaceParams& p) {
  auto f1 = [&](double x) { return std::abs(x) >= p.c || x == 0.0 ? 0.0 : xi_boundary(cplx(x), +1, p)[0].imag(); };
  auto f2 = [&](double x) { return std::abs(x) >= p.c || x == 0.0 ? 0.0 : xi_boundary(cplx(x), +1, p)[1].imag(); };
  double a = integrate_ts(f1, -p.c, 0.0) + integrate_ts(f1, 0.0, p.c);
  double b = integrate_ts(f2, -p.c, 0.0) + integrate_ts(f2, 0.0, p.c);
  return {a, b};
}

PowerFit fit_mu1_power(const SurfaceParams& p, double xmin, double xmax, int n) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    double x = xmin * std::pow(xmax / xmin, double(i) / (n - 1));
    double lx = std::log(x), ly = std::log(density_mu1(x, p));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double icpt = (sy - slope * sx) / n;
  return {slope, std::exp(icpt)};
}

}  // namespace tmm
