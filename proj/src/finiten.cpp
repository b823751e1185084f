#include "tmm/finiten.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "tmm/measures.hpp"

namespace tmm {

namespace {

unsigned digits_for(int bits) { return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1; }

// int y^p e^{-n(y^4/4 + b y^2/2)} dy for even p, Taylor series in the quadratic part
mpreal quartic_moment(int p, int n, double b, int bits) {
  mpreal a = mpreal(n) / 4, c = -mpreal(n) * b / 2;
  mpreal eps = pow(mpreal(2), -bits - 16);
  mpreal sum = 0, cj = 1;
  for (int j = 0; j < 100000; ++j) {
    if (j > 0) cj *= c / j;
    mpreal e = mpreal(p + 2 * j + 1) / 4;
    mpreal term = cj * boost::multiprecision::tgamma(e) * pow(a, -e) / 2;
    sum += term;
    if (j > 4 && abs(term) < eps * abs(sum) && mpreal(j) > abs(c)) return sum;
  }
  throw Error(ErrorCode::QuadratureFailure, "quartic moment series did not converge");
}

// m_0..m_K with the integration-by-parts recursion m_{p+4} = (p+1) m_p / n - b m_{p+2}
std::vector<mpreal> quartic_moments(int K, int n, double b, int bits) {
  std::vector<mpreal> m(K + 5, mpreal(0));
  m[0] = quartic_moment(0, n, b, bits);
  m[2] = quartic_moment(2, n, b, bits);
  for (int p = 0; p + 4 <= K + 4; p += 2) m[p + 4] = mpreal(p + 1) * m[p] / n - mpreal(b) * m[p + 2];
  return m;
}

mpreal horner(const std::vector<mpreal>& c, const mpreal& x) {
  mpreal r = 0;
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

// guard bits against cancellation in the series when b > 0
int guard_bits(int n, double b) { return 64 + (b > 0 ? static_cast<int>(std::ceil(n * b * b / 4 / std::log(2.0))) : 0); }

}  // namespace

PrecisionGuard::PrecisionGuard(int bits) : old_(mpreal::default_precision()) {
  mpreal::default_precision(digits_for(bits));
}
PrecisionGuard::~PrecisionGuard() { mpreal::default_precision(old_); }

int default_precision_bits(int n) { return 64 * ((n + 5) / 6); }

BimomentMatrix bimoment_matrix(int n, double alpha, double tau, int precision_bits) {
  if (n < 1 || n > 36) throw Error(ErrorCode::ConfigError, "bimoment_matrix: n must be in 1..36");
  if (precision_bits <= 0) precision_bits = default_precision_bits(n);
  if (precision_bits < 8 * n) throw Error(ErrorCode::ConfigError, "bimoment_matrix: precision_bits < 8n");
  BimomentMatrix R;
  R.n = n;
  R.size = n + 1;
  R.precision_bits = precision_bits;
  R.alpha = alpha;
  R.tau = tau;
  const double b = alpha - tau * tau;
  int S = R.size;
  std::vector<mpreal> m;
  {
    PrecisionGuard g(precision_bits + guard_bits(n, b));
    m = quartic_moments(2 * S, n, b, precision_bits);
  }
  PrecisionGuard g(precision_bits);
  for (auto& v : m) v.precision(digits_for(precision_bits));
  // x-integral done exactly: x = tau y + Z / sqrt(n), E Z^i = (i-1)!!
  mpreal pref = sqrt(2 * boost::math::constants::pi<mpreal>() / n);
  std::vector<mpreal> gauss(S + 1, mpreal(0));
  gauss[0] = 1;
  for (int i = 2; i <= S; i += 2) gauss[i] = gauss[i - 2] * (i - 1) / n;
  R.B.assign(S, std::vector<mpreal>(S, mpreal(0)));
  for (int j = 0; j < S; ++j)
    for (int k = 0; k < S; ++k) {
      if ((j + k) % 2) continue;
      mpreal s = 0, binom = 1;
      for (int i = 0; i <= j; ++i) {
        if (i > 0) binom = binom * (j - i + 1) / i;
        if (i % 2) continue;
        s += binom * pow(mpreal(tau), j - i) * gauss[i] * m[j - i + k];
      }
      R.B[j][k] = pref * s;
    }
  return R;
}

std::vector<std::vector<double>> bimoment_tensor_oracle(int n, double alpha, double tau, int size, double h,
                                                        double L) {
  int N = static_cast<int>(std::round(2 * L / h));
  std::vector<double> xs(N + 1);
  for (int i = 0; i <= N; ++i) xs[i] = -L + i * h;
  std::vector<std::vector<double>> B(size, std::vector<double>(size, 0.0));
  std::vector<double> xp(size), yp(size);
  for (double x : xs)
    for (double y : xs) {
      double w = std::exp(-n * (x * x / 2 + y * y * y * y / 4 + alpha * y * y / 2 - tau * x * y)) * h * h;
      if (w < 1e-300) continue;
      xp[0] = yp[0] = 1;
      for (int i = 1; i < size; ++i) {
        xp[i] = xp[i - 1] * x;
        yp[i] = yp[i - 1] * y;
      }
      for (int j = 0; j < size; ++j)
        for (int k = 0; k < size; ++k) B[j][k] += w * xp[j] * yp[k];
    }
  return B;
}

mpreal BiorthogonalFamily::p(int k, const mpreal& x) const { return horner(P[k], x); }

namespace {

BiorthogonalFamily factor(const BimomentMatrix& Bm) {
  PrecisionGuard g(Bm.precision_bits);
  const int S = Bm.size;
  const auto& B = Bm.B;
  std::vector<std::vector<mpreal>> L(S, std::vector<mpreal>(S, mpreal(0))), U = L;
  std::vector<mpreal> D(S);
  for (int k = 0; k < S; ++k) {
    mpreal d = B[k][k];
    for (int m = 0; m < k; ++m) d -= L[k][m] * D[m] * U[m][k];
    if (d == 0) throw Error(ErrorCode::SingularMinor, "biorthogonal: vanishing leading minor at k = " + std::to_string(k));
    D[k] = d;
    L[k][k] = U[k][k] = 1;
    for (int i = k + 1; i < S; ++i) {
      mpreal l = B[i][k], u = B[k][i];
      for (int m = 0; m < k; ++m) {
        l -= L[i][m] * D[m] * U[m][k];
        u -= L[k][m] * D[m] * U[m][i];
      }
      L[i][k] = l / d;
      U[k][i] = u / d;
    }
  }
  // unit triangular inverses
  auto inv_lower = [S](const std::vector<std::vector<mpreal>>& A) {
    std::vector<std::vector<mpreal>> X(S, std::vector<mpreal>(S, mpreal(0)));
    for (int i = 0; i < S; ++i) {
      X[i][i] = 1;
      for (int j = 0; j < i; ++j) {
        mpreal s = 0;
        for (int m = j; m < i; ++m) s += A[i][m] * X[m][j];
        X[i][j] = -s;
      }
    }
    return X;
  };
  std::vector<std::vector<mpreal>> Ut(S, std::vector<mpreal>(S));
  for (int i = 0; i < S; ++i)
    for (int j = 0; j < S; ++j) Ut[i][j] = U[j][i];
  BiorthogonalFamily F;
  F.n = Bm.n;
  F.precision_bits = Bm.precision_bits;
  F.alpha = Bm.alpha;
  F.tau = Bm.tau;
  auto Pm = inv_lower(L), Qm = inv_lower(Ut);
  F.P.resize(S);
  F.Q.resize(S);
  for (int k = 0; k < S; ++k) {
    F.P[k].assign(Pm[k].begin(), Pm[k].begin() + k + 1);
    F.Q[k].assign(Qm[k].begin(), Qm[k].begin() + k + 1);
  }
  F.h = D;
  // P B Q^T against diag(h)
  double res = 0;
  for (int j = 0; j < Bm.n; ++j) {
    std::vector<mpreal> row(S, mpreal(0));
    for (int a = 0; a <= j; ++a)
      for (int b = 0; b < S; ++b) row[b] += F.P[j][a] * B[a][b];
    for (int k = 0; k < Bm.n; ++k) {
      mpreal s = 0;
      for (int b = 0; b <= k; ++b) s += row[b] * F.Q[k][b];
      if (j == k) s -= F.h[k];
      res = std::max(res, (abs(s) / sqrt(abs(F.h[j] * F.h[k]))).convert_to<double>());
    }
  }
  F.residual = res;
  return F;
}

}  // namespace

BiorthogonalFamily biorthogonal(const BimomentMatrix& B) {
  BiorthogonalFamily F = factor(B);
  int bits = B.precision_bits;
  while (!(F.residual < std::pow(10.0, -bits / 8.0))) {
    bits *= 2;
    if (bits > 4096) throw Error(ErrorCode::PrecisionExhausted, "biorthogonal: residual not reached at 4096 bits");
    F = factor(bimoment_matrix(B.n, B.alpha, B.tau, bits));
  }
  return F;
}

BiorthogonalFamily biorthogonal(int n, double alpha, double tau, int precision_bits) {
  return biorthogonal(bimoment_matrix(n, alpha, tau, precision_bits));
}

ZeroSet zeros_pn(const BiorthogonalFamily& fam) {
  PrecisionGuard g(fam.precision_bits);
  const auto& c = fam.P[fam.n];
  const int n = fam.n;
  // Fujiwara bound 2 max |a_{n-i}|^{1/i}
  double R = 1e-3;
  for (int i = 1; i <= n; ++i) R = std::max(R, 2 * std::pow(abs(c[n - i]).convert_to<double>(), 1.0 / i));
  const int N = 400 * n;
  ZeroSet Z;
  auto sgn = [](const mpreal& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  mpreal xprev = -R;
  int sprev = sgn(horner(c, xprev));
  for (int i = 1; i <= N; ++i) {
    mpreal x = -R + mpreal(2 * R) * i / N;
    int s = sgn(horner(c, x));
    if (s == 0) {
      Z.zeros.push_back(x.convert_to<double>());
      // step past the exact zero
      ++i;
      if (i > N) break;
      x = -R + mpreal(2 * R) * i / N;
      s = sgn(horner(c, x));
    } else if (s != sprev && sprev != 0) {
      mpreal lo = xprev, hi = x;
      for (int it = 0; it < 100; ++it) {
        mpreal mid = (lo + hi) / 2;
        if (sgn(horner(c, mid)) == sprev)
          lo = mid;
        else
          hi = mid;
      }
      Z.zeros.push_back(((lo + hi) / 2).convert_to<double>());
    }
    xprev = x;
    sprev = s;
  }
  std::sort(Z.zeros.begin(), Z.zeros.end());
  Z.min_gap = 1e300;
  for (size_t i = 1; i < Z.zeros.size(); ++i) Z.min_gap = std::min(Z.min_gap, Z.zeros[i] - Z.zeros[i - 1]);
  Z.all_real_simple = static_cast<int>(Z.zeros.size()) == n && Z.min_gap > 1e-8;
  return Z;
}

double mu1_cdf(double x, double alpha, double tau) {
  auto p = make_surface(alpha, tau);
  if (x <= -p.c) return 0.0;
  if (x >= p.c) return 1.0;
  boost::math::quadrature::tanh_sinh<double> ts(12);
  auto rho = [&](double t) { return density_mu1(t, p); };
  double r = 0;
  if (x <= 0)
    r = ts.integrate(rho, -p.c, x, 1e-12);
  else
    r = ts.integrate(rho, -p.c, 0.0, 1e-12) + ts.integrate(rho, 0.0, x, 1e-12);
  return r;
}

double kolmogorov_to_mu1(const std::vector<double>& zeros, double alpha, double tau) {
  const double n = zeros.size();
  double d = 0;
  for (size_t i = 0; i < zeros.size(); ++i) {
    double F = mu1_cdf(zeros[i], alpha, tau);
    d = std::max({d, std::abs(F - i / n), std::abs(F - (i + 1) / n)});
  }
  return d;
}

FiniteKernel::FiniteKernel(BiorthogonalFamily fam) : fam_(std::move(fam)) { extend_moments(2 * fam_.n + 64); }

void FiniteKernel::extend_moments(int upto) {
  if (static_cast<int>(mw_.size()) > upto) return;
  PrecisionGuard g(fam_.precision_bits + guard_bits(fam_.n, fam_.alpha));
  mw_ = quartic_moments(std::max(upto, 2 * static_cast<int>(mw_.size())), fam_.n, fam_.alpha, fam_.precision_bits);
}

// Q_k(y) e^{n y^2/2}, k < n, from J_l(y) = sum_j (n tau y)^j / j! mw_{l+j}
std::vector<mpreal> FiniteKernel::Qvals(double y) {
  const int n = fam_.n;
  PrecisionGuard g(fam_.precision_bits);
  mpreal c = mpreal(n) * fam_.tau * y;
  mpreal eps = pow(mpreal(2), -fam_.precision_bits);
  std::vector<mpreal> J(n, mpreal(0));
  mpreal cj = 1;
  for (int j = 0;; ++j) {
    if (j > 0) cj *= c / j;
    extend_moments(j + n + 4);
    mpreal big = 0, jmax = 0;
    for (int l = 0; l < n; ++l) {
      mpreal t = cj * mw_[l + j];
      J[l] += t;
      big = std::max(big, mpreal(abs(t)));
      jmax = std::max(jmax, mpreal(abs(J[l])));
    }
    if (j > 4 && mpreal(j) > abs(c) && big < eps * jmax) break;
    if (j > 200000) throw Error(ErrorCode::QuadratureFailure, "FiniteKernel: coupling series did not converge");
  }
  std::vector<mpreal> Q(n);
  for (int k = 0; k < n; ++k) {
    mpreal s = 0;
    for (int l = 0; l <= k; ++l) s += fam_.Q[k][l] * J[l];
    Q[k] = s;
  }
  return Q;
}

double FiniteKernel::operator()(double x, double y) {
  auto Q = Qvals(y);
  PrecisionGuard g(fam_.precision_bits);
  mpreal X = x, s = 0;
  for (int k = 0; k < fam_.n; ++k) s += fam_.p(k, X) * Q[k] / fam_.h[k];
  s *= exp(-mpreal(fam_.n) * y * y / 2);
  return s.convert_to<double>();
}

double FiniteKernel::density(double x) { return (*this)(x, x) / fam_.n; }

double kernel_n(double x, double y, const BiorthogonalFamily& fam) { return FiniteKernel(fam)(x, y); }

FiniteNSummary finite_n_summary(int n, double alpha, double tau, int precision_bits) {
  FiniteNSummary S;
  S.n = n;
  auto F = biorthogonal(n, alpha, tau, precision_bits);
  S.zeros = zeros_pn(F);
  S.ks = kolmogorov_to_mu1(S.zeros.zeros, alpha, tau);
  S.residual = F.residual;
  S.min_h = 1e300;
  for (int k = 0; k < n; ++k) S.min_h = std::min(S.min_h, F.h[k].convert_to<double>());
  return S;
}

double kernel_trace(FiniteKernel& K, double L, int points) {
  double h = 2 * L / (points - 1), s = 0;
  for (int i = 0; i < points; ++i) {
    double x = -L + i * h;
    double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
    s += w * K(x, x);
  }
  return s * h;
}

}  // namespace tmm
