#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tmm/surface.hpp"

using namespace tmm;

TEST_CASE("gamma at the critical point and along the scaling") {
  CHECK(gamma_of(-1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  auto [a1, t1] = scaled_params(1, 0, 1000000);
  CHECK(std::abs(gamma_of(a1, t1) - (1 + 1e-2 / 3 + 11.0 / 144 * 1e-4)) < 5e-6);
  auto [a2, t2] = scaled_params(0, 1, 1000000);
  CHECK(std::abs(gamma_of(a2, t2) - (1 + 47.0 / 48 * 1e-4)) < 5e-6);
  CHECK(std::abs(gamma_residual(a1, t1, gamma_of(a1, t1))) < 1e-12);
}

TEST_CASE("scaled parameters") {
  auto p0 = scaled_params(0, 0, 77);
  CHECK(p0.first == -1.0);
  CHECK(p0.second == 1.0);
  auto p1 = scaled_params(1, 0, 1000);
  CHECK(p1.first == doctest::Approx(-0.8).epsilon(1e-14));
  CHECK(p1.second == doctest::Approx(1.1).epsilon(1e-14));
  auto p2 = scaled_params(0, 1, 1000);
  CHECK(p2.first == doctest::Approx(-1.01).epsilon(1e-14));
  CHECK(p2.second == doctest::Approx(1.02).epsilon(1e-14));
  CHECK_THROWS_AS(scaled_params(1, 1, 0), Error);
}

TEST_CASE("w branches") {
  auto p = critical_surface();
  // z - 2/z - 5/z^3 with a z^{-5} remainder whose coefficient settles near -24
  auto w = w_branches(cplx(10, 0), p);
  CHECK(std::abs(w[0] - 9.795) < 5e-4);
  for (double z : {10.0, 20.0, 40.0}) {
    double r = (w_branches(cplx(z, 0), p)[0] - (z - 2 / z - 5 / (z * z * z))).real() * std::pow(z, 5);
    CHECK(r == doctest::Approx(-24.5).epsilon(0.05));
  }
  // both w1 and w4 tend to i from quadrant I
  auto w0 = w_branches(1e-8 * std::exp(I * pi / 4.0), p);
  CHECK(std::abs(w0[0] - I) < 1e-3);
  CHECK(std::abs(w0[3] - I) < 1e-3);
  // odd symmetry
  cplx z(0.7, 1.3);
  auto a = w_branches(z, p), b = w_branches(-z, p);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(a[j] + b[j]) < 1e-10);
}

TEST_CASE("xi branches lie on the spectral curve") {
  auto p = critical_surface();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-5, 5);
  double r = 0;
  for (int i = 0; i < 50; ++i) {
    cplx z(U(rng), U(rng));
    for (auto x : xi_branches(z, p)) r = std::max(r, std::abs(x * x * x * x - z * x * x * x + z * z));
  }
  CHECK(r < 1e-10);
  CHECK(std::abs(xi_branches(cplx(100, 0), p)[0] - 99.99) < 1e-5);
}

TEST_CASE("xi_1 ~ C z^{-1/2} near zero off criticality") {
  auto p = make_surface(-1.1, 1.0);
  double g = p.gamma, t = p.tau;
  cplx C = std::exp(3.0 * pi * I / 4.0) * std::pow(g, 0.25) * (-2 * g * g + 1 / g + std::pow(t, 4.0 / 3.0) * g);
  CHECK(std::abs(near_zero_constant(p) - C) < 1e-10 * std::abs(C));
  cplx z = 1e-8 * std::exp(I * pi / 3.0);
  CHECK(std::abs(xi_branches(z, p)[0] * std::sqrt(z) - C) < 1e-3 * std::abs(C));
}

TEST_CASE("lambda jumps and near-zero structure") {
  auto p = critical_surface();
  auto lp = lambda_boundary(cplx(-4, 0), +1, p), lm = lambda_boundary(cplx(-4, 0), -1, p);
  CHECK(std::abs(lp[0] - lm[0] + 2 * pi * I) < 1e-8);
  auto a = lambda_boundary(cplx(1.5, 0), +1, p), b = lambda_boundary(cplx(1.5, 0), -1, p);
  CHECK(std::abs(a[0] - (std::conj(b[0]) + pi * I)) < 1e-8);
  auto f = fit_lambda_near_zero(p);
  cplx H = 2.0 / 3.0 * std::exp(I * pi / 4.0);
  CHECK(std::abs(f.F0) < 1e-4);
  CHECK(std::abs(f.G0) < 1e-4);
  CHECK(std::abs(f.H0 - H) < 1e-4 * std::abs(H));
}

TEST_CASE("theta branches") {
  auto th = theta_branches(cplx(0, 0), -1, 1);
  CHECK(std::abs(th.theta[0] - 0.25) < 1e-12);
  CHECK(std::abs(th.theta[2]) < 1e-12);
  CHECK(x_star(-1, 1) == doctest::Approx(2 / (3 * std::sqrt(3.0))).epsilon(1e-12));
  double z = 1e4, al = -1, ta = 1;
  double lead = 0.75 * std::pow(ta * z, 4.0 / 3) - al / 2 * std::pow(ta * z, 2.0 / 3) + al * al / 6;
  cplx t1 = theta_branches(cplx(z, 0), al, ta).theta[0];
  CHECK(std::abs(t1 - lead) < 1e-4 * std::abs(lead));
}

TEST_CASE("phase classification") {
  CHECK(classify_phase(-1, 1) == PhaseCase::Multicritical);
  CHECK(classify_phase(2, 0.8) == PhaseCase::CaseI);
  CHECK(classify_phase(1, 3) == PhaseCase::CaseII);
  CHECK(classify_phase(-2, 2) == PhaseCase::CaseIII);
  CHECK(classify_phase(-2.5, 0.2) == PhaseCase::CaseIV);
  CHECK(classify_phase(0, std::sqrt(2.0)) == PhaseCase::BoundaryI_II);
}
