#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <vector>

#include "tmm/common.hpp"

namespace tmm {

using mpreal = boost::multiprecision::mpfr_float;

// sets the working precision of new mpreal values for the lifetime of the guard
class PrecisionGuard {
 public:
  explicit PrecisionGuard(int bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned old_;
};

int default_precision_bits(int n);  // 64 ceil(n/6)

// weight e^{-n(V(x) + W(y) - tau x y)}, V = x^2/2, W = y^4/4 + alpha y^2/2
struct BimomentMatrix {
  int n = 0;
  int size = 0;  // n + 1, the extra row/column gives p_n and q_n
  int precision_bits = 0;
  double alpha = -1, tau = 1;
  std::vector<std::vector<mpreal>> B;
  double at(int j, int k) const { return B[j][k].convert_to<double>(); }
};

BimomentMatrix bimoment_matrix(int n, double alpha = -1, double tau = 1, int precision_bits = 0);

// plain double tensor trapezoid on [-L, L]^2, independent of the moment recursion
std::vector<std::vector<double>> bimoment_tensor_oracle(int n, double alpha, double tau, int size,
                                                        double h = 0.01, double L = 6.0);

// monic p_k, q_k (coefficients in increasing degree) and h_k^2, k = 0..n
struct BiorthogonalFamily {
  int n = 0;
  int precision_bits = 0;
  double alpha = -1, tau = 1;
  std::vector<std::vector<mpreal>> P, Q;
  std::vector<mpreal> h;
  double residual = 0;  // max |int p_j q_k w - delta_jk h_k| / sqrt(h_j h_k), j,k < n
  mpreal p(int k, const mpreal& x) const;
};

// Doolittle B = L D U; P = L^{-1}, Q^T = U^{-1}. Retries at doubled precision when the
// residual is above 10^{-bits/8}
BiorthogonalFamily biorthogonal(const BimomentMatrix& B);
BiorthogonalFamily biorthogonal(int n, double alpha = -1, double tau = 1, int precision_bits = 0);

struct ZeroSet {
  std::vector<double> zeros;
  bool all_real_simple = false;  // n sign changes found
  double min_gap = 0;
};
ZeroSet zeros_pn(const BiorthogonalFamily& fam);

// Kolmogorov distance between the normalized zero-counting measure and mu1
double mu1_cdf(double x, double alpha = -1, double tau = 1);
double kolmogorov_to_mu1(const std::vector<double>& zeros, double alpha = -1, double tau = 1);

// K_n(x,y) = sum_{k<n} p_k(x) Q_k(y) / h_k,
// Q_k(y) = e^{-n V(y)} int q_k(w) e^{-n(W(w) - tau y w)} dw by a Taylor series in the coupling
class FiniteKernel {
 public:
  explicit FiniteKernel(BiorthogonalFamily fam);
  double operator()(double x, double y);
  double density(double x);  // K_n(x,x)/n
  const BiorthogonalFamily& family() const { return fam_; }

 private:
  std::vector<mpreal> Qvals(double y);
  void extend_moments(int upto);
  BiorthogonalFamily fam_;
  std::vector<mpreal> mw_;  // int w^p e^{-n W(w)} dw
};

double kernel_n(double x, double y, const BiorthogonalFamily& fam);

struct FiniteNSummary {
  int n;
  ZeroSet zeros;
  double ks;
  double residual;
  double min_h;
};
FiniteNSummary finite_n_summary(int n, double alpha = -1, double tau = 1, int precision_bits = 0);

// trapezoid integral of K_n(x,x) over [-L, L]
double kernel_trace(FiniteKernel& K, double L = 6.0, int points = 481);

}  // namespace tmm
