#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmm/laxpair.hpp"

using namespace tmm;

TEST_CASE("coefficients") {
  auto C = lax_coefficients(0.5, 0.7);
  CHECK(std::abs(C.b - C.h - 2 * C.d * C.t) < 1e-12);
  CHECK(std::abs(C.k - (C.c * C.c - C.d * C.d - C.s)) < 1e-12);
  auto C0 = lax_coefficients(0.3, 0.0);
  CHECK(C0.b == doctest::Approx(C0.h).epsilon(1e-14));
  // frozen values at (0.3, -0.4)
  auto C1 = lax_coefficients(0.3, -0.4);
  CHECK(C1.b == doctest::Approx(0.0799814).epsilon(1e-5));
}

TEST_CASE("matrix structure") {
  auto C = lax_coefficients(0.3, -0.4);
  cplx z(1.3, -0.7);
  auto L = lax_matrices(z, C), L0 = lax_matrices(0.0, C);
  CHECK(std::abs(L.U.trace()) < 1e-14);
  CHECK(std::abs(L.W.trace()) < 1e-14);
  Mat4 dU = L.U - L0.U, dW = L.W - L0.W;
  Mat4 eU = Mat4::Zero(), eW = Mat4::Zero();
  eU(2, 0) = I * z;
  eU(3, 1) = -I * z;
  eW.diagonal() << z, -z, z, -z;
  CHECK(maxabs(dU - eU) < 1e-14);
  CHECK(maxabs(dW - eW) < 1e-14);
}

TEST_CASE("compatibility") {
  CHECK(compatibility_residual(cplx(1, 1), 0.3, -0.4) < 1e-6);
  CHECK(lax_identities(0.3, -0.4).max() < 1e-6);
  // no zeta dependence beyond roundoff
  double a = compatibility_residual(0.0, 0.3, -0.4), b = compatibility_residual(5.0, 0.3, -0.4),
         c = compatibility_residual(cplx(0, 10), 0.3, -0.4);
  CHECK(std::abs(a - b) < 1e-9);
  CHECK(std::abs(a - c) < 1e-9);
}

TEST_CASE("asymptotic frame") {
  for (cplx z : {cplx(0, 3), cplx(2, 1), cplx(-1, 4)}) {
    auto F = asymptotic_frame(z, 0.3, -0.4, 0, Branch::Plus);
    CHECK(std::abs(F.frame.determinant() - 1.0) < 1e-10);
  }
  // I + N1/zeta has trace-free N1, so det = 1 + O(zeta^{-2})
  Mat4 N1 = frame_N1(0.3, -0.4);
  CHECK(std::abs(N1.trace()) < 1e-10);
  for (double R : {10.0, 20.0}) {
    auto F = asymptotic_frame(cplx(0, R), 0.3, -0.4, 1, Branch::Plus);
    CHECK(std::abs(F.frame.determinant() - 1.0) * R * R < 1.0);
  }
  // order-1 residual decays like |zeta|^{-3/2}
  double r10 = frame_ode_residual(cplx(0, 10), 0.3, -0.4, 1, Branch::Plus);
  double r40 = frame_ode_residual(cplx(0, 40), 0.3, -0.4, 1, Branch::Plus);
  double r0 = frame_ode_residual(cplx(0, 10), 0.3, -0.4, 0, Branch::Plus);
  CHECK(r10 < r0);
  CHECK(r10 / r40 == doctest::Approx(8.0).epsilon(0.2));
  // single-psi reduction: the exponents are -psi(-z)+tz, -psi(z)-tz, ...
  cplx z(0.4, 2.0);
  double s = 0.7;
  auto chi = frame_exponents(z, s, 0.0, Branch::Plus);
  auto psi = [&](cplx w) { return 2.0 / 3.0 * std::pow(w, 1.5) + 2.0 * s * std::sqrt(w); };
  CHECK(std::abs(chi[1] + psi(z)) < 1e-12);
  CHECK(std::abs(chi[3] - psi(z)) < 1e-12);
}

TEST_CASE("N1 displayed entries") {
  auto C = lax_coefficients(0.3, -0.4);
  Mat4 N = frame_N1(0.3, -0.4);
  CHECK(std::abs(N(0, 1) - C.b) < 1e-10);
  CHECK(std::abs(N(0, 3) - I * C.d) < 1e-10);
  CHECK(std::abs(N(1, 0) + C.b) < 1e-10);
  CHECK(std::abs(N(2, 1) - I * C.f) < 1e-10);
  CHECK(std::abs(N(2, 3) - C.h) < 1e-10);
  CHECK(std::abs(N(3, 2) + C.h) < 1e-10);
}

TEST_CASE("gauge and Stokes rays") {
  auto C = lax_coefficients(0.3, -0.4);
  auto Cg = lax_gauged(C);
  Mat4 G = lax_gauge_matrix(C);
  cplx z(0.9, 0.2);
  CHECK(maxabs(lax_U(z, C) - G * lax_U(z, Cg) * G.inverse()) < 1e-13);
  CHECK(Cg.c == 0.0);
  for (int k = 0; k < 6; ++k)
    for (int n : stokes_ray_counts(k)) CHECK(n == 1);
  CHECK_THROWS_AS(branch_arg(cplx(0, -2), Branch::Plus), Error);
}
