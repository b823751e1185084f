#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmm/rhsolver.hpp"

using namespace tmm;

TEST_CASE("regions and jumps") {
  CHECK(region_of(cplx(1, 0.1)) == 'a');
  CHECK(region_of(cplx(0, 1)) == 'c');
  CHECK(region_of(cplx(-1, 0)) == 'f');
  CHECK(region_of(cplx(0, -1)) == 'h');
  CHECK(region_of(cplx(1, -0.1)) == 'j');
  for (int k = 0; k < 10; ++k) CHECK(std::abs(jump_matrix(k).determinant() - 1.0) < 1e-14);
  // the two canonical solutions differ by a constant unipotent matrix
  Mat4 T = region_factor('c').inverse() * region_factor('h');
  CHECK(maxabs(T - Mat4::Identity()) == 0.0);
}

TEST_CASE("determinant and jumps at (0,0)") {
  RhContext ctx(0, 0);
  for (cplx z : {cplx(0, 2), cplx(0, 5), cplx(1, 1)}) CHECK(std::abs(solve_M(z, ctx).Ms.det() - 1.0) < 1e-6);
  auto jr = jump_residuals(ctx, {0.5, 2.0});
  CHECK(jr.size() == 20);
  for (auto& j : jr) CHECK(j.residual < 1e-4);
  // positive real axis from both sides
  for (double x : {0.5, 2.0}) {
    Mat4 Mp = solve_M(cplx(x, 1e-6), ctx).M, Mm = solve_M(cplx(x, -1e-6), ctx).M;
    CHECK(maxabs(Mp - Mm * jump_matrix(0)) / maxabs(Mp) < 1e-4);
  }
  CHECK(connection_residual(cplx(0.8, 0.6), ctx) < 1e-10);
}

TEST_CASE("jumps do not depend on t") {
  RhContext a(0, 0), b(0, 0.8);
  auto ja = jump_residuals(a, {0.5, 2.0}), jb = jump_residuals(b, {0.5, 2.0});
  for (size_t i = 0; i < ja.size(); ++i) CHECK(std::abs(ja[i].residual - jb[i].residual) < 1e-4);
  CHECK(connection_residual(cplx(0.8, 0.6), b) < 1e-10);
}

TEST_CASE("start radius independence") {
  RhSolveOptions o10, o14;
  o10.R0 = 10;
  o14.R0 = 14;
  RhContext a(1, -1, o10), b(1, -1, o14);
  for (cplx z : {cplx(0.7, 0.4), cplx(-1.2, 0.3), cplx(0, 3)}) {
    Mat4 x = solve_M(z, a).M, y = solve_M(z, b).M;
    CHECK(maxabs(x - y) / maxabs(y) < 1e-5);
  }
}

TEST_CASE("ODE and direct series agree where both are valid") {
  RhSolveOptions ode;
  ode.direct_series = false;
  RhContext a(0.3, 0, ode), b(0.3, 0);
  auto x = solve_M(cplx(7, 0), a), y = solve_M(cplx(7, 0), b);
  CHECK_FALSE(x.diagnostics.direct_series);
  CHECK(y.diagnostics.direct_series);
  Mat4 h = x.Ms.hat;
  for (int j = 0; j < 4; ++j) h.col(j) *= std::exp(x.Ms.logs(j) - y.Ms.logs(j));
  CHECK(maxabs(h - y.Ms.hat) / maxabs(y.Ms.hat) < 1e-7);
}

TEST_CASE("ODE residual diagnostic") {
  RhSolveOptions o;
  o.ode_residual = true;
  auto s = solve_M(cplx(0.9, 0.7), 0.2, 0.1, o);
  CHECK(s.diagnostics.ode_residual >= 0);
  CHECK(s.diagnostics.ode_residual < 1e-8);
}

TEST_CASE("Hastings-McLeod extraction") {
  auto a = hm_extraction(0, 0);
  CHECK(a.rel_error < 1e-3);
  auto b = hm_extraction(0.5, -1);
  CHECK(std::abs(b.target - a.target) < 1e-14);
  CHECK(b.rel_error < 1e-3);
  CHECK(hm_extraction(1, 0).rel_error < 1e-3);
}

TEST_CASE("transformed solution M~+") {
  RhContext ctx(0, 0);
  double dc = std::abs(matrix_Cplus().determinant());
  for (double u : {1e-3, 0.1, 2.0}) CHECK(std::abs(std::abs(mtilde_plus(u, ctx).determinant()) - dc) < 1e-6);
  double n0 = maxabs(mtilde_plus(1e-3, ctx)), n1 = maxabs(mtilde_plus(0.1, ctx));
  CHECK(n0 < 10 * n1);
  // leading-order frame: error ~ 0.33/u, so 1e-2 is reached only for u > 33
  double e10 = mtilde_frame_error(10, ctx), e40 = mtilde_frame_error(40, ctx);
  CHECK(e10 == doctest::Approx(0.0328).epsilon(0.02));
  CHECK(e10 / e40 == doctest::Approx(4.0).epsilon(0.1));
  CHECK(e40 < 1e-2);
  // with the N1 correction the error is below 1e-2 at u = 10 and falls like u^{-2}
  double f10 = mtilde_frame_error(10, ctx, 1), f20 = mtilde_frame_error(20, ctx, 1);
  CHECK(f10 < 1e-2);
  CHECK(f10 / f20 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("options") {
  RhSolveOptions o;
  o.tol = -1;
  CHECK_THROWS_AS(o.validate(), Error);
}
