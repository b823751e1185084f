#include "tmm/laxpair.hpp"

#include <cmath>

namespace tmm {

namespace {

const double c13 = std::cbrt(2.0);  // 2^{1/3}

Mat4 commutator(const Mat4& a, const Mat4& b) { return a * b - b * a; }

// Richardson-extrapolated central difference of a smooth function of t
template <class F>
auto rich_diff(F f, double t, double h) {
  auto d1 = (f(t + h) - f(t - h)) / (2 * h);
  auto d2 = (f(t + h / 2) - f(t - h / 2)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

LaxCoefficients lax_coefficients(double s, double t, const HmSolution& hm) {
  const double sigma = c13 * c13 * (2 * s - t * t);
  HmPoint p = hm(sigma);  // throws OutOfDomain
  LaxCoefficients C;
  C.s = s;
  C.t = t;
  C.d = p.q / c13;
  C.c = -p.u / c13 + s * s;
  // (1/4t) dd/dt = -2^{-2/3} q'; the chain rule keeps this finite at t = 0
  C.r = -p.qprime / (c13 * c13);
  C.dd_dt = 4 * t * C.r;
  C.b = C.r + C.d * C.c + t * C.d;
  C.h = C.r + C.d * C.c - t * C.d;
  C.f = 2 * C.d * t * t - 2 * C.c * C.r - C.d * C.c * C.c - C.d * C.d * C.d - 2 * C.d * s;
  C.k = C.c * C.c - C.d * C.d - s;
  return C;
}

Mat4 lax_U(cplx z, const LaxCoefficients& C) {
  const double t = C.t, c = C.c, d = C.d, s = C.s, k = C.k, hb = C.h + C.b;
  Mat4 U;
  U << t - c, d, I, 0.0,
       -d, c - t, 0.0, I,
       I * (z - s) + I * k, -I * hb, t + c, d,
       -I * hb, -I * (z + s) + I * k, -d, -(t + c);
  return U;
}

Mat4 lax_W(cplx z, const LaxCoefficients& C) {
  const double b = C.b, d = C.d, f = C.f, h = C.h;
  Mat4 W;
  W << z, -2 * b, 0.0, -2.0 * I * d,
       -2 * b, -z, 2.0 * I * d, 0.0,
       0.0, -2.0 * I * f, z, -2 * h,
       2.0 * I * f, 0.0, -2 * h, -z;
  return W;
}

LaxMatrices lax_matrices(cplx z, const LaxCoefficients& C) { return {lax_U(z, C), lax_W(z, C)}; }

double compatibility_residual(cplx z, double s, double t, const HmSolution& hm) {
  auto U = [&](double tt) -> Mat4 { return lax_U(z, lax_coefficients(s, tt, hm)); };
  Mat4 dU = rich_diff(U, t, 1e-4);
  auto C = lax_coefficients(s, t, hm);
  Mat4 dW = Vec4(1, -1, 1, -1).asDiagonal();
  return maxabs(dW - dU - commutator(lax_U(z, C), lax_W(z, C)));
}

double LaxIdentities::max() const {
  double m = 0;
  for (double r : residual) m = std::max(m, r);
  return m;
}

LaxIdentities lax_identities(double s, double t, const HmSolution& hm) {
  const double h = 1e-4;
  auto get = [&](double (*f)(const LaxCoefficients&)) {
    return rich_diff([&](double tt) { return f(lax_coefficients(s, tt, hm)); }, t, h);
  };
  auto C = lax_coefficients(s, t, hm);
  double cp = get([](const LaxCoefficients& x) { return x.c; });
  double dp = get([](const LaxCoefficients& x) { return x.d; });
  double kp = get([](const LaxCoefficients& x) { return x.k; });
  double hbp = get([](const LaxCoefficients& x) { return x.h + x.b; });
  const double b = C.b, hh = C.h, c = C.c, d = C.d, f = C.f, k = C.k;
  LaxIdentities L;
  L.residual[0] = std::abs(cp - 2 * (hh - b) * d);
  L.residual[1] = std::abs(dp - (4 * b * (t - c) - 2 * d * s + 2 * d * k - 2 * f));
  L.residual[2] = std::abs(dp - (4 * hh * (t + c) + 2 * d * s - 2 * d * k + 2 * f));
  L.residual[3] = std::abs(b - hh - 2 * d * t);
  L.residual[4] = std::abs(kp - 2 * (hh * hh - b * b));
  L.residual[5] = std::abs(hbp - (-4 * f * t + 2 * (hh - b) * (k - s)));
  return L;
}

const Mat4& matrix_A() {
  static const Mat4 A = [] {
    Mat4 a;
    a << 1.0, 0.0, -I, 0.0,
         0.0, 1.0, 0.0, I,
         -I, 0.0, 1.0, 0.0,
         0.0, I, 0.0, 1.0;
    return Mat4(a / std::sqrt(2.0));
  }();
  return A;
}

double branch_arg(cplx z, Branch br) {
  if (z == 0.0) throw Error(ErrorCode::BranchCutHit, "frame evaluated at zeta = 0");
  double th = std::arg(z);
  if (br == Branch::Plus) {
    if (th <= -pi / 2) th += 2 * pi;
  } else {
    if (th >= pi / 2) th -= 2 * pi;
  }
  // both continuations are cut along one imaginary half-axis
  if (std::abs(std::abs(th) - 1.5 * pi) < 1e-14 || (br == Branch::Plus && std::abs(th + pi / 2) < 1e-14) ||
      (br == Branch::Minus && std::abs(th - pi / 2) < 1e-14))
    throw Error(ErrorCode::BranchCutHit, "frame evaluated on the branch cut of the chosen continuation");
  return th;
}

std::array<cplx, 4> frame_exponents(cplx z, double s, double t, Branch br) {
  const double th = branch_arg(z, br), r = std::abs(z), b = double(int(br));
  cplx zh = std::sqrt(r) * std::exp(I * (th / 2));
  cplx wh = std::sqrt(r) * std::exp(I * ((th - b * pi) / 2));
  auto psi = [s](cplx x) { return 2.0 / 3.0 * x * x * x + 2 * s * x; };
  cplx zeta = r * std::exp(I * th);
  return {-psi(wh) + t * zeta, -psi(zh) - t * zeta, psi(wh) + t * zeta, psi(zh) - t * zeta};
}

Vec4 frame_B(cplx z, Branch br) {
  const double th = branch_arg(z, br), r = std::abs(z), b = double(int(br));
  cplx z4 = std::pow(r, 0.25) * std::exp(I * (th / 4));
  cplx w4 = std::pow(r, 0.25) * std::exp(I * ((th - b * pi) / 4));
  return Vec4(1.0 / w4, 1.0 / z4, w4, z4);
}

FormalSeries<4> lax_formal_series(const LaxCoefficients& C, Branch br, int K) {
  const double b = double(int(br));
  const std::array<cplx, 4> beta{std::exp(b * I * pi / 4.0), 1.0, std::exp(-b * I * pi / 4.0), 1.0};
  const std::array<double, 4> p{-0.5, -0.5, 0.5, 0.5};
  Mat4 U0 = lax_U(0.0, C), U1 = lax_U(1.0, C) - U0;
  // dN/dz = 2z U(z^2) N; with N = B A Y e^Lambda the coefficient matrix of Y is
  // B^{-1}(2zU)B - diag(p)/z = sum_n E_n z^{2-n}
  std::vector<Mat4> E(4, Mat4::Zero());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int dp = int(std::lround(p[j] - p[i]));
      cplx fac = 2.0 * beta[j] / beta[i];
      E[1 - dp](i, j) += U0(i, j) * fac;
      if (U1(i, j) != 0.0) E[-1 - dp](i, j) += U1(i, j) * fac;
    }
  for (int i = 0; i < 4; ++i) E[3](i, i) -= p[i];
  const Mat4& A = matrix_A();
  Mat4 Ai = A.inverse();
  for (auto& e : E) e = Ai * e * A;
  return FormalSeries<4>::build(E, K);
}

LaxCoefficients lax_gauged(const LaxCoefficients& C) {
  LaxCoefficients g = C;
  g.c = 0;
  g.k = -C.d * C.d - C.s;
  g.b = C.r + C.t * C.d;
  g.h = C.r - C.t * C.d;
  return g;
}

Mat4 lax_gauge_matrix(const LaxCoefficients& C) {
  Mat4 G = Mat4::Identity();
  G(2, 0) = -I * C.c;
  G(3, 1) = I * C.c;
  return G;
}

Mat4 frame_N1(double s, double t, const HmSolution& hm) {
  auto C = lax_coefficients(s, t, hm);
  auto fs = lax_formal_series(C, Branch::Plus, 8);
  const std::array<cplx, 4> beta{std::exp(I * pi / 4.0), 1.0, std::exp(-I * pi / 4.0), 1.0};
  const std::array<double, 4> p{-0.5, -0.5, 0.5, 0.5};
  // Y e^{L}, L = sum_{m>=4} D_m z^{3-m}/(3-m) expanded to z^{-3}
  std::array<Vec4, 4> ex;
  {
    Vec4 l1 = -fs.D[4].diagonal(), l2 = -fs.D[5].diagonal() / 2.0, l3 = -fs.D[6].diagonal() / 3.0;
    ex[0] = Vec4::Ones();
    ex[1] = l1;
    ex[2] = l2 + l1.cwiseProduct(l1) / 2.0;
    ex[3] = l3 + l1.cwiseProduct(l2) + l1.cwiseProduct(l1).cwiseProduct(l1) / 6.0;
  }
  const Mat4& A = matrix_A();
  Mat4 Ai = A.inverse();
  std::array<Mat4, 4> Z;
  for (int k = 0; k < 4; ++k) {
    Z[k] = Mat4::Zero();
    for (int a = 0; a <= k; ++a) Z[k] += fs.Y[a] * ex[k - a].asDiagonal();
    Z[k] = A * Z[k] * Ai;
  }
  Mat4 N1;
  for (int i = 0; i < 4; ++i)
    for (int l = 0; l < 4; ++l) {
      int k = int(std::lround(2 + p[i] - p[l]));
      N1(i, l) = beta[i] / beta[l] * Z[k](i, l);
    }
  return N1;
}

AsymptoticFrame asymptotic_frame(cplx z, double s, double t, int order, Branch br, const HmSolution& hm) {
  AsymptoticFrame F;
  F.zeta = z;
  F.s = s;
  F.t = t;
  F.order = order;
  F.branch = br;
  auto ex = frame_exponents(z, s, t, br);
  Mat4 G = frame_B(z, br).asDiagonal() * matrix_A();
  if (order >= 1) G = (Mat4::Identity() + frame_N1(s, t, hm) / z) * G;
  for (int j = 0; j < 4; ++j) G.col(j) *= std::exp(ex[j]);
  F.frame = G;
  return F;
}

double frame_ode_residual(cplx z, double s, double t, int order, Branch br, const HmSolution& hm) {
  auto C = lax_coefficients(s, t, hm);
  Mat4 N1 = order >= 1 ? frame_N1(s, t, hm) : Mat4::Zero();
  auto G = [&](cplx x) -> Mat4 {
    return (Mat4::Identity() + N1 / x) * frame_B(x, br).asDiagonal() * matrix_A();
  };
  // frame = G e^chi, so frame' - U frame = (G' + G chi' - U G) e^chi
  const double th = branch_arg(z, br), r = std::abs(z), b = double(int(br));
  cplx zh = std::sqrt(r) * std::exp(I * (th / 2)), wh = std::sqrt(r) * std::exp(I * ((th - b * pi) / 2));
  cplx a = (wh * wh + s) / wh, c = (zh * zh + s) / zh;
  Vec4 chip(a + t, -c - t, -a + t, c - t);
  cplx h = 1e-4 * std::abs(z) * z / std::abs(z);
  Mat4 Gp = (8.0 * (G(z + h / 2.0) - G(z - h / 2.0)) - (G(z + h) - G(z - h))) / (6.0 * h);
  Mat4 G0 = G(z);
  Mat4 R = Gp + G0 * chip.asDiagonal() - lax_U(z, C) * G0;
  return maxabs(R) / maxabs(lax_U(z, C) * G0);
}

StokesSector stokes_sector(int k) { return {k, -pi / 12 + k * pi / 3, 7 * pi / 12 + k * pi / 3}; }

std::array<int, 6> stokes_ray_counts(int k) {
  auto S = stokes_sector(k);
  const double shift = k < 3 ? 0.0 : -2 * pi;
  const double b = k < 3 ? 1.0 : -1.0;
  const int n = 2000;
  std::array<int, 6> cnt{};
  std::array<double, 6> prev{};
  for (int m = 0; m <= n; ++m) {
    double th = S.lo + shift + (S.hi - S.lo) * (m + 0.5) / (n + 1);
    cplx z32 = std::exp(I * (1.5 * th)), w32 = std::exp(I * (1.5 * (th - b * pi)));
    std::array<cplx, 4> ps{-w32, -z32, w32, z32};
    int q = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j, ++q) {
        double v = std::real(ps[i] - ps[j]);
        if (m > 0 && ((v > 0) != (prev[q] > 0))) ++cnt[q];
        prev[q] = v;
      }
  }
  return cnt;
}

}  // namespace tmm
