#pragma once

#include <array>
#include <vector>

#include "tmm/formal.hpp"
#include "tmm/laxpair.hpp"

namespace tmm {

// Zero and One truncate the formal solution after the I and zeta^{-1} terms,
// Optimal truncates at the smallest term
enum class FrameOrder { Zero = 0, One = 1, Optimal = 2 };
// Rows integrates rows of M^{-1} (adjoint equation), Cols integrates columns of M
enum class SolveFamily { Auto, Rows, Cols };

struct RhSolveOptions {
  double R0 = 12;             // minimum initialization radius
  FrameOrder order = FrameOrder::Optimal;
  double tol = 1e-10;         // validated only, Taylor steps always run to full double precision
  double max_step = 0.5;      // chord length along arcs
  double series_tol = 1e-14;  // first omitted term of the formal series at the start radius
  SolveFamily family = SolveFamily::Auto;
  double cost_budget = 25;    // path cost above which the result is flagged
  bool direct_series = true;  // use the series itself when |zeta| is beyond the start radius
  bool ode_residual = false;  // re-differentiate the result (three extra solves)
  void validate() const;
};

struct RhDiagnostics {
  double det_error = 0;
  double ode_residual = -1;  // -1 when not computed
  double R0_used = 0;
  double series_error = 0;
  double cost = 0;  // log of the worst amplification of a dominant contaminant
  bool conditioning_warning = false;
  bool direct_series = false;
  SolveFamily family = SolveFamily::Auto;
  int steps = 0;
};

// regions between consecutive jump rays, 'a' = (0, pi/6) counterclockwise to 'j' = (-pi/6, 0);
// 'c' contains the positive imaginary axis, 'h' the negative one
struct RhSolution {
  cplx zeta;
  double s = 0, t = 0;
  char region = 'c';
  ScaledMat<4> Ms;  // M = Ms.hat diag(exp(Ms.logs))
  Mat4 M;           // Ms.value(), may overflow far out
  RhDiagnostics diagnostics;
};

// per-(s,t) data: coefficients, gauge, formal series on both continuations, start radius
class RhContext {
 public:
  RhContext(double s, double t, const RhSolveOptions& o = {}, const HmSolution& hm = hm_default());
  double s, t;
  RhSolveOptions opts;
  LaxCoefficients C, Cg;
  Mat4 G, Ginv;
  FormalSeries<4> ser_plus, ser_minus;
  PolyMat<4> Ucol, Urow;  // gauged U and -U^T as polynomials in zeta
  double R0_used;
  double start_series_error;

  const FormalSeries<4>& series(int half) const { return half > 0 ? ser_plus : ser_minus; }
};

double ray_angle(int k);      // angle of jump ray k = 0..9
Mat4 jump_matrix(int k);      // M_+ = M_- J_k, + on the counterclockwise side
char region_of(cplx zeta);    // rays belong to their counterclockwise region
int region_half(char region);  // +1 for a..e, -1 for f..j
Mat4 region_factor(char region);  // M_region = M_canonical * factor

// canonical solution of a half (M_c for +1, M_h for -1) continued to zeta
ScaledMat<4> solve_canonical(cplx zeta, int half, const RhContext& ctx, SolveFamily fam, RhDiagnostics* diag = nullptr);

RhSolution solve_M(cplx zeta, const RhContext& ctx);
RhSolution solve_M(cplx zeta, double s, double t, const RhSolveOptions& opts = {});

// (M diag(e^{-chi}) A^{-1} B^{-1} - I) zeta at iR for R -> infinity, 1-4 entry; equals i 2^{-1/3} q
struct HmExtraction {
  cplx value;
  cplx target;
  double rel_error;
};
HmExtraction hm_extraction(double s, double t, const RhSolveOptions& opts = {});

// M~+(u) = M(iu)^{-T} C+
const Mat4& matrix_Cplus();
const Mat4& matrix_Cminus();
Mat4 mtilde_plus(double u, const RhContext& ctx);
// relative error of M~+(u) D(u)^{-1} against B~^{-1} A^{-1} C+ for u > 0; order 1 also
// carries the (I + N1/zeta)^{-T} correction
double mtilde_frame_error(double u, const RhContext& ctx, int order = 0);

struct JumpResidual {
  int ray;
  double radius;
  double residual;  // ||M_+ - M_- J|| / ||M_+||
};
// M_+ from the row family, M_- from the column family; rays 0 and 5 compare the two halves
std::vector<JumpResidual> jump_residuals(const RhContext& ctx, const std::vector<double>& radii);
// M_c^{-1} M_h at zeta compared with its constant value I - E13 - E14 - E23 - E24
double connection_residual(cplx zeta, const RhContext& ctx);

}  // namespace tmm
