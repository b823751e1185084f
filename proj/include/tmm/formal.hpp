#pragma once

// Formal solutions at an irregular singular point and a Taylor integrator for
// linear ODEs with polynomial coefficients. Shared by the 4x4 and 2x2 problems.

#include <algorithm>
#include <cmath>
#include <vector>

#include "tmm/common.hpp"

namespace tmm {

// Y' = E(x) Y with E(x) = sum_n E_n x^{2-n}, E_0 diagonal with distinct entries.
// Formal solution Y(x) = (sum_k Y_k x^{-k}) exp(Lambda(x)),
// Lambda = D0 x^3/3 + D1 x^2/2 + D2 x + D3 log x + sum_{m>=4} D_m x^{3-m}/(3-m).
template <int N>
struct FormalSeries {
  using Mat = Eigen::Matrix<cplx, N, N>;
  using Vec = Eigen::Matrix<cplx, N, 1>;
  std::vector<Mat> Y, D;

  static FormalSeries build(const std::vector<Mat>& E, int K) {
    FormalSeries fs;
    Vec lam = E[0].diagonal();
    fs.Y.push_back(Mat::Identity());
    fs.D.push_back(lam.asDiagonal());
    for (int n = 1; n <= K; ++n) {
      Mat F = n < int(E.size()) ? E[n] : Mat::Zero();
      for (int m = 1; m < n; ++m) {
        if (m < int(E.size())) F += E[m] * fs.Y[n - m];
        F -= fs.Y[n - m] * fs.D[m];
      }
      if (n >= 3) F += double(n - 3) * fs.Y[n - 3];
      Mat Yn = Mat::Zero(), Dn = Mat::Zero();
      for (int i = 0; i < N; ++i) {
        Dn(i, i) = F(i, i);
        for (int j = 0; j < N; ++j)
          if (i != j) Yn(i, j) = F(i, j) / (lam(j) - lam(i));
      }
      fs.Y.push_back(Yn);
      fs.D.push_back(Dn);
    }
    return fs;
  }

  struct Eval {
    Mat Ys;     // optimally truncated sum
    Vec expo;   // Lambda(x)
    double err; // first omitted term
    int kopt;
  };

  // x with its argument already on the intended branch (log x uses arg(x))
  // kmax > 0 truncates after kmax terms instead of at the smallest term
  Eval eval(cplx x, int kmax = 0) const {
    const int K = int(Y.size()) - 1;
    double ax = std::abs(x);
    int kopt = 1;
    double best = 1e300;
    for (int k = 1; k <= K; ++k) {
      double m = maxabs(Y[k]) * std::pow(ax, -k);
      if (m < best) {
        best = m;
        kopt = k;
      }
    }
    if (kmax > 0) {
      kopt = std::min(kmax, K);
      best = maxabs(Y[kopt]) * std::pow(ax, -kopt);
    }
    Eval e;
    e.Ys = Mat::Zero();
    cplx xi = 1.0 / x, p = 1.0;
    for (int k = 0; k < kopt; ++k) {
      e.Ys += Y[k] * p;
      p *= xi;
    }
    e.err = best;
    e.kopt = kopt;
    for (int j = 0; j < N; ++j) {
      cplx ex = D[0](j, j) * x * x * x / 3.0 + D[1](j, j) * x * x / 2.0 + D[2](j, j) * x + D[3](j, j) * std::log(x);
      cplx pw = xi;
      for (int m = 4; m < int(D.size()); ++m) {
        ex += D[m](j, j) * pw / double(3 - m);
        pw *= xi;
      }
      e.expo(j) = ex;
    }
    return e;
  }
};

// polynomial matrix P(x) = sum_m P_m x^m
template <int N>
struct PolyMat {
  using Mat = Eigen::Matrix<cplx, N, N>;
  std::vector<Mat> c;
  Mat operator()(cplx x) const {
    Mat r = Mat::Zero();
    for (int m = int(c.size()) - 1; m >= 0; --m) r = r * x + c[m];
    return r;
  }
  // coefficients of P(x0 + tau) in tau
  std::vector<Mat> shifted(cplx x0) const {
    int d = int(c.size()) - 1;
    std::vector<Mat> s(c.size(), Mat::Zero());
    for (int m = 0; m <= d; ++m) {
      double binom = 1;
      cplx pw = 1;
      // term c_m (x0+tau)^m = sum_j C(m,j) x0^{m-j} tau^j
      std::vector<cplx> pows(m + 1);
      pows[0] = 1;
      for (int q = 1; q <= m; ++q) pows[q] = pows[q - 1] * x0;
      for (int j = 0; j <= m; ++j) {
        binom = 1;
        for (int q = 0; q < j; ++q) binom = binom * (m - q) / (q + 1);
        s[j] += c[m] * (binom * pows[m - j]);
      }
      (void)pw;
    }
    return s;
  }
  PolyMat transposed_neg() const {
    PolyMat r;
    for (auto& m : c) r.c.push_back(-m.transpose());
    return r;
  }
};

// vector with a complex log scale: value = v * exp(logs)
template <int N>
struct ScaledVec {
  Eigen::Matrix<cplx, N, 1> v;
  cplx logs = 0;
};

struct TaylorOptions {
  double rho = 0.8;      // |P| h bound per step
  double term_tol = 1e-17;
  int max_terms = 400;
};

// y' = P(x) y along the straight segment x0 -> x1, renormalizing after each step
template <int N>
int taylor_segment(const PolyMat<N>& P, ScaledVec<N>& y, cplx x0, cplx x1, const TaylorOptions& o = {}) {
  using Vec = Eigen::Matrix<cplx, N, 1>;
  const cplx L = x1 - x0;
  const double aL = std::abs(L);
  if (aL == 0) return 0;
  double pos = 0;
  int steps = 0;
  std::vector<Vec> c;
  while (pos < 1 - 1e-15) {
    cplx xc = x0 + pos * L;
    auto Q = P.shifted(xc);
    double lam = 1e-30;
    for (size_t m = 0; m < Q.size(); ++m) {
      double nq = 0;
      for (int i = 0; i < N; ++i) nq = std::max(nq, Q[m].row(i).cwiseAbs().sum());
      lam = std::max(lam, std::pow(nq, 1.0 / double(m + 1)));
    }
    double dh = std::min(1 - pos, o.rho / (lam * aL));
    cplx h = dh * L;
    c.assign(1, y.v);
    Vec acc = y.v;
    int k = 0;
    double small_run = 0;
    while (true) {
      Vec nxt = Vec::Zero();
      cplx hp = h;
      for (size_t m = 0; m < Q.size() && int(m) <= k; ++m) {
        nxt += Q[m] * c[k - m] * hp;
        hp *= h;
      }
      nxt /= double(k + 1);
      c.push_back(nxt);
      acc += nxt;
      ++k;
      double na = maxabs(acc);
      if (maxabs(nxt) < o.term_tol * na)
        small_run += 1;
      else
        small_run = 0;
      if (small_run >= int(Q.size()) + 1) break;
      if (k > o.max_terms) throw Error(ErrorCode::IntegrationFailure, "Taylor series did not converge");
    }
    double n = maxabs(acc);
    if (!(n > 0) || !std::isfinite(n)) throw Error(ErrorCode::IntegrationFailure, "Taylor step produced a non-finite vector");
    y.v = acc / n;
    y.logs += std::log(n);
    pos += dh;
    ++steps;
  }
  return steps;
}

// matrix stored as hat * diag(exp(logs)), columns carry their own scale
template <int N>
struct ScaledMat {
  using Mat = Eigen::Matrix<cplx, N, N>;
  Mat hat;
  Eigen::Matrix<cplx, N, 1> logs;

  Mat value() const {
    Mat m = hat;
    for (int j = 0; j < N; ++j) m.col(j) *= std::exp(logs(j));
    return m;
  }
  // (this) * J for a constant J
  ScaledMat times(const Mat& J) const {
    ScaledMat r;
    for (int k = 0; k < N; ++k) {
      int jm = -1;
      for (int j = 0; j < N; ++j)
        if (J(j, k) != 0.0 && (jm < 0 || logs(j).real() > logs(jm).real())) jm = j;
      r.logs(k) = jm < 0 ? 0.0 : logs(jm);
      Eigen::Matrix<cplx, N, 1> col = Eigen::Matrix<cplx, N, 1>::Zero();
      for (int j = 0; j < N; ++j)
        if (J(j, k) != 0.0) col += hat.col(j) * (J(j, k) * std::exp(logs(j) - r.logs(k)));
      r.hat.col(k) = col;
    }
    return r;
  }
  ScaledMat left(const Mat& G) const { return {G * hat, logs}; }
  // log|det|-free determinant: det(hat) * exp(sum logs)
  cplx det() const { return hat.determinant() * std::exp(logs.sum()); }
};

}  // namespace tmm
