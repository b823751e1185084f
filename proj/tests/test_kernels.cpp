#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmm/kernels.hpp"

using namespace tmm;

TEST_CASE("K_cr") {
  CrKernel K({0, 0});
  CHECK(std::abs(K.raw(1.0, 2.0).imag()) < 1e-6);
  for (double u : {0.5, 1.0, 2.0, 5.0}) CHECK(K.diag(u) >= -1e-6);
  // frozen values
  CHECK(kernel_cr_diag(1.0, {0, 0}) == doctest::Approx(0.2018517064).epsilon(1e-8));
  CHECK(K.diag(0.0) == doctest::Approx(0.14359877).epsilon(1e-6));
  CrKernel L({0.3, -0.2});
  // origin reached by extrapolation from |u| >= 1e-3
  CHECK(L.diag(0.0) == doctest::Approx(0.19098644).epsilon(1e-6));
  CHECK(L(0.0, 1.0) == doctest::Approx(0.24501481).epsilon(1e-6));
  CHECK(L.diag(0.5) == doctest::Approx(L.diag(-0.5)).epsilon(1e-10));
  double d = L.diag(1.5);
  CHECK(std::abs(L(1.5, 1.5 + 1e-4) - d) < 1e-3);
  CHECK(std::abs(L(1.5, 1.5 + 1e-5) - d) < 1e-5);
  CHECK(L(1.0, 2.0) == doctest::Approx(0.4755).epsilon(1e-3));
  CHECK(L.max_imag < 1e-8);
}

TEST_CASE("K_cr large u") {
  CrParams p{0.3, -0.2};
  CrKernel K(p);
  std::vector<double> r;
  for (double u = 15; u <= 30.01; u += 1.5) r.push_back(std::pow(u, 1.5) * std::abs(K.diag(u) - cr_diag_asym(u, p)));
  CHECK(*std::max_element(r.begin(), r.end()) < 1.0);
  CHECK(growth_ratio(r) < 1.5);
}

TEST_CASE("K_tac") {
  TacParams p{1, 0.3};
  TacKernel T(p);
  double d = T.diag(1.5);
  CHECK(std::abs(T(1.5, 1.5 + 1e-5) - d) < 1e-5);
  CHECK(T(1.0, 2.0) == doctest::Approx(0.2192).epsilon(1e-3));
  CHECK_THROWS_AS(T.diag(-1.0), Error);
  // r-scaling
  TacParams q{2.0, 0.3};
  double sc = std::pow(2.0, 2.0 / 3.0);
  TacKernel A(q), B({1.0, 0.3 * std::pow(2.0, -1.0 / 3.0)});
  CHECK(A(1.0, 2.0) == doctest::Approx(sc * B(sc * 1.0, sc * 2.0)).epsilon(1e-12));
}

TEST_CASE("K_tac oscillation") {
  TacParams p{1, 0.3};
  TacKernel T(p);
  std::vector<double> u, res, ph, sc;
  for (int i = 0; i <= 150; ++i) {
    double x = 15 + 0.1 * i;
    double k = T.diag(x);
    u.push_back(x);
    res.push_back(k - tac_diag_asym(x, p, false));
    ph.push_back(tac_phase(x, p));
    sc.push_back(std::pow(x, 1.5) * std::abs(k - tac_diag_asym(x, p, true)));
  }
  auto f = fit_oscillation(u, res, ph);
  CHECK(f.amplitude > 0.8);
  CHECK(f.amplitude < 1.2);
  CHECK(growth_ratio(sc) < 1.5);
}

TEST_CASE("Psi for Painleve II") {
  auto c = pii_checks(0.0);
  for (double j : c.jump_residual) CHECK(j < 1e-4);
  CHECK(c.symmetry < 1e-6);
  CHECK(c.det_error < 1e-10);
  // the limit itself is -i q/2; 2i times it recovers q
  CHECK(c.q_recovery_2i_error < 1e-3);
  PiiPsi P(0.0);
  CHECK(std::abs(c.q_limit + I * P.q / 2.0) < 1e-3);
  Mat2 J1 = PiiPsi::jump(1);
  CHECK(J1(0, 0) == 1.0);
  CHECK(J1(1, 0) == 1.0);
  CHECK(J1(0, 1) == 0.0);
}

TEST_CASE("K_PII") {
  PiiKernel K(1.0);
  CHECK(std::abs(K.raw(0.3, -0.6).imag()) < 1e-6);
  CHECK(K(0.3, -0.6) == doctest::Approx(K(-0.3, 0.6)).epsilon(1e-6));
  CHECK(K(0.3, -0.6) == doctest::Approx(0.354).epsilon(2e-3));
  double d = K.diag(0.4);
  CHECK(std::abs(K(0.4, 0.4 + 1e-4) - d) < 1e-3);
  // the swapped convention gives the transpose
  PiiKernel S(1.0, PiiOrder::Swapped);
  CHECK(S(0.3, -0.6) == doctest::Approx(K(-0.6, 0.3)).epsilon(1e-10));
}

TEST_CASE("double scaling") {
  double g3 = double_scaling_gap(3, 0.5, -0.5, 0.7), g4 = double_scaling_gap(4, 0.5, -0.5, 0.7);
  double g5 = double_scaling_gap(5, 0.5, -0.5, 0.7);
  CHECK(g4 < g3);
  CHECK(g5 <= 0.6 * g3);
  CHECK(g3 == doctest::Approx(0.0963814).epsilon(1e-4));
  double d3 = double_scaling_diag_gap(3, 0.5, 0.7), d4 = double_scaling_diag_gap(4, 0.5, 0.7);
  CHECK(d4 < d3);
}

TEST_CASE("grids") {
  auto g = cr_grid({0, 0}, {0.5, 1.0}, {0.5, 1.0});
  CHECK(g.values.size() == 2);
  CHECK(g.values[0][1] == doctest::Approx(kernel_cr(0.5, 1.0, {0, 0})).epsilon(1e-12));
  CHECK(g.min_diag > 0);
  auto t = tac_grid({1, 0}, {1.0}, {1.0, 2.0});
  CHECK(t.values[0].size() == 2);
  auto q = pii_grid(0.5, {0.1}, {0.1});
  CHECK(q.max_imag < 1e-8);
}
