#include "tmm/painleve.hpp"

#include <array>
#include <boost/math/special_functions/airy.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace tmm {

namespace {

// value and derivative of the quintic Hermite interpolant on [0,1] (scaled by h)
std::pair<double, double> quintic(double t, double h, double f0, double d0, double s0, double f1, double d1, double s1) {
  double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  double H0 = 1 - 10 * t3 + 15 * t4 - 6 * t5, dH0 = -30 * t2 + 60 * t3 - 30 * t4;
  double H1 = t - 6 * t3 + 8 * t4 - 3 * t5, dH1 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
  double H2 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5), dH2 = 0.5 * (2 * t - 9 * t2 + 12 * t3 - 5 * t4);
  double H5 = 10 * t3 - 15 * t4 + 6 * t5, dH5 = -dH0;
  double H4 = -4 * t3 + 7 * t4 - 3 * t5, dH4 = -12 * t2 + 28 * t3 - 15 * t4;
  double H3 = 0.5 * (t3 - 2 * t4 + t5), dH3 = 0.5 * (3 * t2 - 8 * t3 + 5 * t4);
  double v = f0 * H0 + h * d0 * H1 + h * h * s0 * H2 + f1 * H5 + h * d1 * H4 + h * h * s1 * H3;
  double dv = (f0 * dH0 + h * d0 * dH1 + h * h * s0 * dH2 + f1 * dH5 + h * d1 * dH4 + h * h * s1 * dH3) / h;
  return {v, dv};
}

double left_asymptotic(double s) {
  // q ~ sqrt(-s/2) (1 + 1/(8 s^3) - 73/(128 s^6))
  double s3 = s * s * s;
  return std::sqrt(-s / 2) * (1 + 1 / (8 * s3) - 73 / (128 * s3 * s3));
}

}  // namespace

double airy_ai(double x) { return boost::math::airy_ai(x); }
double airy_ai_prime(double x) { return boost::math::airy_ai_prime(x); }

HmPoint HmSolution::operator()(double s) const {
  if (!(s >= sigma_min && s <= sigma_max))
    throw Error(ErrorCode::OutOfDomain, "hastings_mcleod: sigma outside the solved domain");
  int n = int(grid.size());
  int i = std::min(n - 2, std::max(0, int((s - sigma_min) / h_)));
  double t = (s - grid[i]) / h_;
  double qv = quintic(t, h_, q[i], qprime[i], qpp_[i], q[i + 1], qprime[i + 1], qpp_[i + 1]).first;
  double qp = quintic(t, h_, qprime[i], qpp_[i], qppp_[i], qprime[i + 1], qpp_[i + 1], qppp_[i + 1]).first;
  return {qv, qp, qp * qp - s * qv * qv - qv * qv * qv * qv};
}

double HmSolution::q_only(double s) const { return (*this)(s).q; }

double HmSolution::qpp_interp(double s) const {
  if (!(s >= sigma_min && s <= sigma_max)) throw Error(ErrorCode::OutOfDomain, "sigma outside domain");
  int n = int(grid.size());
  int i = std::min(n - 2, std::max(0, int((s - sigma_min) / h_)));
  double t = (s - grid[i]) / h_;
  return quintic(t, h_, qprime[i], qpp_[i], qppp_[i], qprime[i + 1], qpp_[i + 1], qppp_[i + 1]).second;
}

HmSolution solve_hastings_mcleod(double smin, double smax, int N, double h) {
  // Chebyshev points x_j = cos(j pi / N), sigma = mid + half x
  const double mid = 0.5 * (smin + smax), half = 0.5 * (smax - smin);
  Eigen::VectorXd x(N + 1), sg(N + 1), c(N + 1);
  for (int j = 0; j <= N; ++j) {
    x(j) = std::cos(pi * j / N);
    sg(j) = mid + half * x(j);
    c(j) = ((j == 0 || j == N) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0);
  }
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j)
      if (i != j) D(i, j) = c(i) / c(j) / (x(i) - x(j));
  for (int i = 0; i <= N; ++i) D(i, i) = -D.row(i).sum();
  D /= half;
  Eigen::MatrixXd D2 = D * D;

  Eigen::VectorXd q(N + 1);
  for (int j = 0; j <= N; ++j) {
    double a = airy_ai(sg(j));
    q(j) = std::sqrt(std::max(-sg(j) / 2, 0.0) + a * a);
  }
  const double qR = airy_ai(smax), qL = left_asymptotic(smin);
  auto resid = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd F = D2 * v;
    for (int j = 0; j <= N; ++j) F(j) -= 2 * v(j) * v(j) * v(j) + sg(j) * v(j);
    F(0) = v(0) - qR;
    F(N) = v(N) - qL;
    return F;
  };
  HmSolution hm;
  Eigen::VectorXd F = resid(q);
  int it = 0;
  for (; it < 60 && F.lpNorm<Eigen::Infinity>() > 1e-12; ++it) {
    Eigen::MatrixXd J = D2;
    for (int j = 0; j <= N; ++j) J(j, j) -= 6 * q(j) * q(j) + sg(j);
    J.row(0).setZero();
    J(0, 0) = 1;
    J.row(N).setZero();
    J(N, N) = 1;
    Eigen::VectorXd dq = J.partialPivLu().solve(-F);
    if (dq.lpNorm<Eigen::Infinity>() < 1e-14) break;  // residual floor of D2 roundoff
    double lam = 1.0, f0 = F.norm();
    while (true) {
      Eigen::VectorXd qn = q + lam * dq;
      Eigen::VectorXd Fn = resid(qn);
      if (Fn.norm() < (1 - 1e-4 * lam) * f0 || lam < 1e-6) {
        q = qn;
        F = Fn;
        break;
      }
      lam *= 0.5;
    }
  }
  hm.newton_iters = it;
  hm.newton_residual = F.lpNorm<Eigen::Infinity>();
  hm.cheb_nodes = N;
  if (!(hm.newton_residual < 1e-8)) throw Error(ErrorCode::IntegrationFailure, "Hastings-McLeod collocation did not converge");

  Eigen::VectorXd qp = D * q;
  // barycentric evaluation on the uniform table
  int n = int(std::lround((smax - smin) / h)) + 1;
  hm.h_ = (smax - smin) / (n - 1);
  hm.sigma_min = smin;
  hm.sigma_max = smax;
  hm.grid.resize(n);
  hm.q.resize(n);
  hm.qprime.resize(n);
  hm.u.resize(n);
  hm.qpp_.resize(n);
  hm.qppp_.resize(n);
  for (int k = 0; k < n; ++k) {
    double s = smin + k * hm.h_;
    double xs = (s - mid) / half;
    double num = 0, nump = 0, den = 0;
    int exact = -1;
    for (int j = 0; j <= N; ++j) {
      double d = xs - x(j);
      if (std::abs(d) < 1e-15) {
        exact = j;
        break;
      }
      double w = ((j == 0 || j == N) ? 0.5 : 1.0) * ((j % 2) ? -1.0 : 1.0) / d;
      num += w * q(j);
      nump += w * qp(j);
      den += w;
    }
    double qv = exact >= 0 ? q(exact) : num / den;
    double qd = exact >= 0 ? qp(exact) : nump / den;
    hm.grid[k] = s;
    hm.q[k] = qv;
    hm.qprime[k] = qd;
    hm.u[k] = qd * qd - s * qv * qv - qv * qv * qv * qv;
    hm.qpp_[k] = 2 * qv * qv * qv + s * qv;
    hm.qppp_[k] = 6 * qv * qv * qd + qv + s * qd;
  }
  return hm;
}

const HmSolution& hm_default() {
  static const HmSolution hm = solve_hastings_mcleod();
  return hm;
}

HmPoint hastings_mcleod(double sigma) { return hm_default()(sigma); }

std::pair<double, double> hm_shooting(double sigma, double sigma0) {
  using namespace boost::numeric::odeint;
  using state = std::array<double, 2>;
  state y{airy_ai(sigma0), airy_ai_prime(sigma0)};
  auto rhs = [](const state& v, state& dv, double s) {
    dv[0] = v[1];
    dv[1] = 2 * v[0] * v[0] * v[0] + s * v[0];
  };
  // q(sigma0) is tiny, so the absolute tolerance must not dominate
  auto stepper = make_controlled(1e-40, 1e-14, runge_kutta_fehlberg78<state>());
  integrate_adaptive(stepper, rhs, y, sigma0, sigma, -1e-3);
  return {y[0], y[1]};
}

HmChecks hm_checks(const HmSolution& hm) {
  HmChecks c{};
  c.pii_residual = 0;
  for (double s = -8; s <= 8 + 1e-12; s += 0.0137) {
    double qv = hm.q_only(s);
    c.pii_residual = std::max(c.pii_residual, std::abs(hm.qpp_interp(s) - 2 * qv * qv * qv - s * qv));
  }
  c.ai_ratio_8 = hm.q_only(8) / airy_ai(8);
  c.hamiltonian_residual = 0;
  for (double s : {-2.0, 0.0, 2.0}) {
    const double d = 1e-4;
    double up = (hm(s + d).u - hm(s - d).u) / (2 * d);
    double q = hm.q_only(s);
    c.hamiltonian_residual = std::max(c.hamiltonian_residual, std::abs(up + q * q));
  }
  // u(s) = u(smax) + int_s^smax q^2, trapezoid with endpoint corrections on the table
  {
    int n = int(hm.grid.size());
    double h = hm.grid[1] - hm.grid[0];
    double acc = 0, worst = 0;
    auto f = [&](int k) { return hm.q[k] * hm.q[k]; };
    auto fp = [&](int k) { return 2 * hm.q[k] * hm.qprime[k]; };
    for (int k = n - 2; k >= 0; --k) {
      acc += 0.5 * h * (f(k) + f(k + 1)) + h * h / 12 * (fp(k) - fp(k + 1));
      worst = std::max(worst, std::abs(hm.u[k] - (hm.u[n - 1] + acc)));
    }
    c.hamiltonian_integral = worst;
  }
  c.shooting_gap_0 = std::abs(hm.q_only(0) - hm_shooting(0).first);
  c.positive = true;
  c.decreasing_above_1 = true;
  for (size_t k = 0; k < hm.grid.size(); ++k) {
    if (!(hm.q[k] > 0)) c.positive = false;
    if (hm.grid[k] > 1 && !(hm.qprime[k] < 0)) c.decreasing_above_1 = false;
  }
  return c;
}

}  // namespace tmm
