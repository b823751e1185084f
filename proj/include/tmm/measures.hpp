#pragma once

#include <string>
#include <vector>

#include "tmm/surface.hpp"

namespace tmm {

enum class MeasureId { mu1, mu2, mu3, sigma2 };
const char* to_string(MeasureId m);
MeasureId measure_from_string(const std::string& s);

enum class Axis { real, imaginary };

struct DensityGrid {
  Axis axis = Axis::real;
  std::vector<double> points;
  std::vector<double> values;
  SurfaceParams params;
  MeasureId measure_id = MeasureId::mu1;
};

// (1/pi) Im xi_{1,+}(x), |x| < c
double density_mu1(double x, const SurfaceParams& p);
// density of mu2 at iy with respect to dy; + is the Re z < 0 side
double density_mu2(double y, const SurfaceParams& p);
double density_mu3(double x, const SurfaceParams& p);
double sigma2_density(double y, double alpha, double tau);

// density evaluated before the real cast, for the reality invariant
cplx density_mu2_complex(double y, const SurfaceParams& p);
cplx density_mu3_complex(double x, const SurfaceParams& p);

double density(MeasureId m, double x, const SurfaceParams& p);
DensityGrid density_grid(MeasureId m, const std::vector<double>& pts, const SurfaceParams& p);

struct MassResult {
  double mass = 0;   // core + tail
  double core = 0;   // integral over |x| <= Y
  double tail = 0;   // fitted remainder beyond Y
  double Y = 0;
  double A = 0, B = 0;  // tail model A|x|^{-5/3} + B|x|^{-7/3} (per side)
};

MassResult mass_mu1(const SurfaceParams& p);
MassResult mass_mu2(const SurfaceParams& p, double Y = 200.0);
MassResult mass_mu3(const SurfaceParams& p, double Y = 200.0);

// (Im int xi_{1,+}, Im int xi_{2,+}) over [-c, c]
std::pair<double, double> xi_integral_check(const SurfaceParams& p);

struct PowerFit {
  double exponent;
  double K;
};
// log-log fit of rho1 on [xmin, xmax]
PowerFit fit_mu1_power(const SurfaceParams& p, double xmin = 1e-4, double xmax = 1e-2, int n = 41);

}  // namespace tmm
