#pragma once

#include <array>

#include "tmm/formal.hpp"
#include "tmm/painleve.hpp"

namespace tmm {

// coefficients of the 4x4 Lax pair at (s, t); r = (1/4t) dd/dt
struct LaxCoefficients {
  double s = 0, t = 0;
  double d = 0, c = 0, b = 0, f = 0, h = 0, k = 0;
  double dd_dt = 0;
  double r = 0;
};

LaxCoefficients lax_coefficients(double s, double t, const HmSolution& hm = hm_default());

struct LaxMatrices {
  Mat4 U, W;
};
LaxMatrices lax_matrices(cplx zeta, const LaxCoefficients& C);
Mat4 lax_U(cplx zeta, const LaxCoefficients& C);
Mat4 lax_W(cplx zeta, const LaxCoefficients& C);

// max entry of dW/dzeta - dU/dt - [U,W], dU/dt by Richardson-extrapolated central differences
double compatibility_residual(cplx zeta, double s, double t, const HmSolution& hm = hm_default());

// the six scalar identities behind compatibility, primes in t by finite differences
struct LaxIdentities {
  std::array<double, 6> residual;  // c', d' (two forms), b-h, k', h'+b'
  double max() const;
};
LaxIdentities lax_identities(double s, double t, const HmSolution& hm = hm_default());

// frame B(zeta) A diag(exp(...)) on the upper (+1) or lower (-1) continuation,
// order 1 premultiplies by I + N1/zeta
enum class Branch { Plus = 1, Minus = -1 };

struct AsymptoticFrame {
  cplx zeta;
  double s = 0, t = 0;
  int order = 0;
  Branch branch = Branch::Plus;
  Mat4 frame;
};

const Mat4& matrix_A();
// arg of zeta in the continuation window: (-pi/2, 3pi/2) for Plus, (-3pi/2, pi/2) for Minus
double branch_arg(cplx zeta, Branch br);
// exponents (-psi(-z)+tz, -psi(z)-tz, psi(-z)+tz, psi(z)-tz) on the continuation
std::array<cplx, 4> frame_exponents(cplx zeta, double s, double t, Branch br);
Vec4 frame_B(cplx zeta, Branch br);  // diagonal of B
AsymptoticFrame asymptotic_frame(cplx zeta, double s, double t, int order, Branch br,
                                 const HmSolution& hm = hm_default());
// N1 from the formal series; the displayed entries are (1,2)=b, (1,4)=id, (2,1)=-b,
// (2,3)=id, (3,2)=if, (3,4)=h, (4,1)=if, (4,3)=-h
Mat4 frame_N1(double s, double t, const HmSolution& hm = hm_default());
// ||frame' - U frame|| / ||frame||, derivative by central differences
double frame_ode_residual(cplx zeta, double s, double t, int order, Branch br, const HmSolution& hm = hm_default());

// formal solution in z = zeta^{1/2}: N = B A (sum Y_k z^{-k}) exp(Lambda) on branch br
FormalSeries<4> lax_formal_series(const LaxCoefficients& C, Branch br, int K = 60);
// constant gauge removing c: U = G Ug G^{-1} with Ug the matrix of lax_gauged(C)
LaxCoefficients lax_gauged(const LaxCoefficients& C);
Mat4 lax_gauge_matrix(const LaxCoefficients& C);

struct StokesSector {
  int k;
  double lo, hi;  // (-pi/12 + k pi/3, 7pi/12 + k pi/3)
};
StokesSector stokes_sector(int k);
// number of sign changes of Re(psi~_i - psi~_j) inside sector k (continuation + for k<3,
// - otherwise), for each pair i<j in the order (12,13,14,23,24,34)
std::array<int, 6> stokes_ray_counts(int k);

}  // namespace tmm
