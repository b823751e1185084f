#pragma once

#include <vector>

#include "tmm/common.hpp"

namespace tmm {

struct HmPoint {
  double q, qprime, u;
};

// Hastings-McLeod solution on a uniform grid, quintic Hermite interpolation
// of q (data q, q', q'') and of q' (data q', q'', q''').
class HmSolution {
 public:
  std::vector<double> grid, q, qprime, u;
  double sigma_min = -12, sigma_max = 12;

  HmPoint operator()(double sigma) const;
  // q'' re-derived from the q' interpolant
  double qpp_interp(double sigma) const;
  double q_only(double sigma) const;

  // collocation details kept for diagnostics
  int cheb_nodes = 0;
  int newton_iters = 0;
  double newton_residual = 0;

 private:
  friend HmSolution solve_hastings_mcleod(double, double, int, double);
  std::vector<double> qpp_, qppp_;
  double h_ = 0;
};

// damped Newton Chebyshev collocation; q(smax) = Ai(smax), q(smin) from the
// sigma -> -inf expansion; then tabulated with spacing h
HmSolution solve_hastings_mcleod(double smin = -12, double smax = 12, int nodes = 240, double h = 0.005);
const HmSolution& hm_default();

// (q, q', u) from hm_default(); OutOfDomain outside [-12, 12]
HmPoint hastings_mcleod(double sigma);

// independent check: adaptive RK from sigma0 (Ai data) leftward to sigma
std::pair<double, double> hm_shooting(double sigma, double sigma0 = 12.0);

double airy_ai(double x);
double airy_ai_prime(double x);

struct HmChecks {
  double pii_residual;      // max |q'' - 2q^3 - sigma q| on [-8, 8]
  double ai_ratio_8;        // q(8)/Ai(8)
  double hamiltonian_residual;  // max |u' + q^2| at -2, 0, 2
  double hamiltonian_integral;  // max |u - (u(smax) + int q^2)|
  double shooting_gap_0;        // |q_coll(0) - q_shoot(0)|
  bool positive;
  bool decreasing_above_1;
};
HmChecks hm_checks(const HmSolution& hm);

}  // namespace tmm
