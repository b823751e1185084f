#pragma once

#include <map>
#include <string>
#include <vector>

#include "tmm/rhsolver.hpp"

namespace tmm {

struct CrParams {
  double s = 0, t = 0;
};
struct TacParams {
  double r = 1, s = 0;
};

// K_cr with a per-(s,t) context and a cache of solved M(iu)
class CrKernel {
 public:
  explicit CrKernel(CrParams p, const RhSolveOptions& opts = {});
  double operator()(double u, double v);  // off-diagonal; falls back to diag when u == v
  double diag(double u);
  cplx raw(double u, double v);  // before the reality check
  cplx raw_diag(double u);
  double origin_eps = 1e-3;  // |u| below this is reached by quadratic extrapolation
  const RhContext& context() const { return ctx_; }
  double max_imag = 0;  // largest |Im| seen
  double max_cost = 0;

 private:
  const ScaledMat<4>& M(double u);
  cplx raw_nz(double u, double v);
  cplx raw_diag_nz(double u);
  RhContext ctx_;
  std::map<double, ScaledMat<4>> cache_;
};

double kernel_cr(double u, double v, const CrParams& p, const RhSolveOptions& opts = {});
double kernel_cr_diag(double u, const CrParams& p, const RhSolveOptions& opts = {});

// K_tac on u, v > 0, general r through r^{2/3} K(r^{2/3}u, r^{2/3}v; 1, s r^{-1/3})
class TacKernel {
 public:
  explicit TacKernel(TacParams p, const RhSolveOptions& opts = {});
  double operator()(double u, double v);
  double diag(double u);
  cplx raw(double u, double v);
  cplx raw_diag(double u);
  double max_imag = 0;

 private:
  const ScaledMat<4>& M(double u);
  TacParams p_;
  double scale_;
  RhContext ctx_;
  std::map<double, ScaledMat<4>> cache_;
};

double kernel_tac(double u, double v, const TacParams& p, const RhSolveOptions& opts = {});
double kernel_tac_diag(double u, const TacParams& p, const RhSolveOptions& opts = {});

// large-u comparators
double cr_diag_asym(double u, const CrParams& p);
double tac_diag_asym(double u, const TacParams& p, bool with_oscillation = true);
// phase of e^{2 psi_2(u)} on the + side, |e^{2 psi_2}| = 1
double tac_phase(double u, const TacParams& p);

// 4 pi u * residual = A cos(phase) + B sin(phase) + C0 + C1 u^{-1/2}
struct OscillationFit {
  double A, B, C0, C1;
  double amplitude;  // sqrt(A^2 + B^2)
};
OscillationFit fit_oscillation(const std::vector<double>& u, const std::vector<double>& resid,
                               const std::vector<double>& phase);
// max |x| over the last third of the samples divided by the max over the first third
double growth_ratio(const std::vector<double>& x);

// Painleve II model problem Psi(zeta; nu), solved from the 2x2 Lax system with polynomial coefficients
enum class PiiOrder { Standard, Swapped };

class PiiPsi {
 public:
  explicit PiiPsi(double nu, const HmSolution& hm = hm_default());
  // Psi in the sector of zeta: 0 = |arg| < pi/6, 1 upper, 2 around the negative axis, 3 lower
  Mat2 operator()(cplx zeta) const;
  Mat2 in_region(cplx zeta, int region) const;
  Vec2 column(cplx zeta, int col, double angle) const;  // recessive column started at angle
  ScaledVec<2> column_scaled(cplx zeta, int col, double angle) const;
  Mat2 A(cplx zeta) const;
  static int region_of(cplx zeta);
  static Mat2 jump(int k);  // k = 1..4
  double nu;
  double q, qprime;
  double R0;
  double series_error;

 private:
  FormalSeries<2> ser_;
  PolyMat<2> P_;
};

Mat2 psi_pii(cplx zeta, double nu, const HmSolution& hm = hm_default());

class PiiKernel {
 public:
  explicit PiiKernel(double nu, PiiOrder order = PiiOrder::Standard);
  double operator()(double x, double y);
  double diag(double x);
  cplx raw(double x, double y);
  cplx raw_diag(double x);
  double max_imag = 0;
  const PiiPsi& psi() const { return psi_; }

 private:
  Vec2 col(double x);
  PiiPsi psi_;
  PiiOrder order_;
  std::map<double, Vec2> cache_;
};

double kernel_pii(double x, double y, double nu, PiiOrder order = PiiOrder::Standard);

struct PiiChecks {
  cplx q_limit;                        // lim zeta Psi12 e^{i(4/3)zeta^3 + i nu zeta}
  double q_recovery_error;             // |q_limit - q(nu)|
  double q_recovery_2i_error;          // |2i q_limit - q(nu)|
  std::array<double, 4> jump_residual;  // per ray at |zeta| = 1
  double symmetry;                     // sigma1 Psi(z) sigma1 - Psi(-z)
  double det_error;
};
PiiChecks pii_checks(double nu);

struct DoubleScaling {
  double a, sigma, x, y;
  Mat2 Ks, Kp;
  double det_s, det_p, gap;
  double R0_used, cost;
};
DoubleScaling double_scaling(double a, double sigma, double x, double y, PiiOrder order = PiiOrder::Standard);
double double_scaling_gap(double a, double sigma, double x, double y);
// x = y: 1x1 comparison of diagonals
double double_scaling_diag_gap(double a, double sigma, double x);

struct KernelGrid {
  std::string which;
  std::vector<double> u, v;
  std::vector<std::vector<double>> values;
  std::vector<std::pair<std::string, double>> params;
  double max_imag = 0;
  double min_diag = 0;
};
KernelGrid cr_grid(const CrParams& p, const std::vector<double>& u, const std::vector<double>& v,
                   const RhSolveOptions& opts = {});
KernelGrid tac_grid(const TacParams& p, const std::vector<double>& u, const std::vector<double>& v,
                    const RhSolveOptions& opts = {});
KernelGrid pii_grid(double nu, const std::vector<double>& u, const std::vector<double>& v);

}  // namespace tmm
