#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tmm/common.hpp"

namespace tmm {

struct SurfaceParams {
  double alpha = -1.0;
  double tau = 1.0;
  double gamma = 1.0;
  double c = 16.0 / (3.0 * std::sqrt(3.0));
};

enum class Quadrant { I, II, III, IV, PosReal, NegReal, PosImag, NegImag, Origin };
const char* to_string(Quadrant q);
Quadrant quadrant_of(cplx z);

// gamma on the branch through gamma(-1,1)=1, by Newton continuation from (-1,1)
double gamma_of(double alpha, double tau);
double gamma_residual(double alpha, double tau, double gamma);
SurfaceParams make_surface(double alpha, double tau);
inline SurfaceParams critical_surface() { return make_surface(-1.0, 1.0); }

std::pair<double, double> scaled_params(double a, double b, long n);

// roots of a monic polynomial (coefficients low to high, leading 1 implied), Newton polished
std::vector<cplx> monic_roots(const std::vector<cplx>& low);

// w_j(z) sorted by modulus, largest first. z must not sit on a branch point.
std::array<cplx, 4> w_branches(cplx z, const SurfaceParams& p);
cplx xi_of_w(cplx w, const SurfaceParams& p);
std::array<cplx, 4> xi_branches(cplx z, const SurfaceParams& p);

// boundary values on a cut. side=+1 is the left side of the oriented axis
// (upper side of R, Re z<0 side of iR). z must lie on R or iR.
std::array<cplx, 4> w_boundary(cplx z, int side, const SurfaceParams& p);
std::array<cplx, 4> xi_boundary(cplx z, int side, const SurfaceParams& p);

// lambda_j(z) for z inside an open quadrant
std::array<cplx, 4> lambda_branches(cplx z, const SurfaceParams& p);
// lambda_{j,side}(z) for z on R or iR (z != 0)
std::array<cplx, 4> lambda_boundary(cplx z, int side, const SurfaceParams& p);

struct SheetValues {
  cplx z;
  Quadrant quadrant;
  std::array<cplx, 4> w, xi, lambda;
};
SheetValues sheet_values(cplx z, const SurfaceParams& p);

// leading coefficient of xi_1 ~ C z^{-1/2} near 0 in quadrant I
cplx near_zero_constant(const SurfaceParams& p);

// lambda_1 = F z^{1/2} + G z + H z^{3/2} + z^2 K near 0 in I; least squares on a small ray
struct NearZeroFit {
  cplx F0, G0, H0, K0;
  double rms;
};
NearZeroFit fit_lambda_near_zero(const SurfaceParams& p, double rmin = 2e-3, double rmax = 0.08);
// closed forms of F(0), G(0), H(0)
std::array<cplx, 3> near_zero_fgh(const SurfaceParams& p);

struct ThetaValues {
  cplx z;
  std::array<cplx, 3> s;
  std::array<cplx, 3> theta;
};
double x_star(double alpha, double tau);
double W_pot(double y, double alpha);
cplx W_pot(cplx y, double alpha);
// s_j, theta_j with the real-axis ordering continued into C. Points on the
// real cuts |x| >= x* take the value from Im z > 0, points on iR from Re z > 0.
ThetaValues theta_branches(cplx z, double alpha, double tau);
// boundary values of s_j at an axis point, side as in w_boundary
std::array<cplx, 3> s_boundary(cplx z, int side, double alpha, double tau);

enum class PhaseCase {
  CaseI,
  CaseII,
  CaseIII,
  CaseIV,
  BoundaryI_II,
  BoundaryIII_IV,
  Multicritical,
  UndeterminedII_III
};
const char* to_string(PhaseCase c);
PhaseCase classify_phase(double alpha, double tau);

}  // namespace tmm
