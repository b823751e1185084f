#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmm/finiten.hpp"
#include "tmm/measures.hpp"

using namespace tmm;

TEST_CASE("bimoments") {
  auto B = bimoment_matrix(6);
  CHECK(B.size == 7);
  CHECK(B.precision_bits == 64);
  CHECK(B.at(0, 1) == 0.0);
  CHECK(B.at(0, 0) > 0);
  CHECK(B.at(0, 0) == doctest::Approx(439.76182).epsilon(1e-7));
  auto O = bimoment_tensor_oracle(6, -1, 1, 7);
  for (int j = 0; j < 7; ++j)
    for (int k = 0; k < 7; ++k) {
      if ((j + k) % 2) {
        CHECK(std::abs(O[j][k]) < 1e-10 * B.at(0, 0));
        continue;
      }
      CHECK(std::abs(B.at(j, k) - O[j][k]) < 1e-10 * std::abs(B.at(j, k)));
    }
  CHECK_THROWS_AS(bimoment_matrix(6, -1, 1, 16), Error);
  CHECK_THROWS_AS(bimoment_matrix(42), Error);
}

TEST_CASE("biorthogonal family") {
  auto B = bimoment_matrix(12);
  auto F = biorthogonal(B);
  CHECK(F.P[0].size() == 1);
  CHECK(F.P[0][0] == 1);
  CHECK(F.Q[0][0] == 1);
  CHECK(F.h[0] == B.B[0][0]);
  CHECK(F.residual < 1e-10);
  for (int k = 0; k <= 12; ++k) CHECK(F.h[k] > 0);
  auto Z = zeros_pn(F);
  CHECK(Z.all_real_simple);
  CHECK(Z.zeros.size() == 12);
  CHECK(Z.min_gap > 1e-8);
  // even potentials: the zeros come in +- pairs
  for (size_t i = 0; i < Z.zeros.size(); ++i) CHECK(std::abs(Z.zeros[i] + Z.zeros[Z.zeros.size() - 1 - i]) < 1e-12);
}

TEST_CASE("zero counting measure against mu1") {
  auto s6 = finite_n_summary(6), s12 = finite_n_summary(12), s18 = finite_n_summary(18);
  CHECK(s12.ks <= 0.15);
  CHECK(s6.ks > s12.ks);
  CHECK(s12.ks > s18.ks);
  CHECK(s6.ks == doctest::Approx(0.1024).epsilon(2e-3));
  CHECK(s12.ks == doctest::Approx(0.0540).epsilon(2e-3));
  CHECK(s18.ks == doctest::Approx(0.0369).epsilon(2e-3));
  CHECK(mu1_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("finite-n kernel") {
  FiniteKernel K(biorthogonal(12));
  CHECK(std::abs(kernel_trace(K) - 12) < 1e-4);
  CHECK(std::abs(K(1.3, 1.3) - K(-1.3, -1.3)) < 1e-8);
  CHECK(std::abs(K(0.7, -0.4) - K(-0.7, 0.4)) < 1e-8);
  CHECK(K.density(0.5) > 0);
  // K_n(x,x)/n approaches rho1: sup gap on [-2.5, 2.5] shrinks from n = 6 to 18
  auto p = critical_surface();
  auto gap = [&](int n) {
    FiniteKernel Kn(biorthogonal(n));
    double g = 0;
    for (int i = 0; i <= 50; ++i) {
      double x = -2.5 + 0.1 * i;
      double rho = std::abs(x) < 1e-12 ? 0.0 : density_mu1(x, p);
      g = std::max(g, std::abs(Kn.density(x) - rho));
    }
    return g;
  };
  double g6 = gap(6), g12 = gap(12), g18 = gap(18);
  CHECK(g12 < g6);
  CHECK(g18 < g12);
  CHECK(kernel_n(0.2, 0.3, biorthogonal(6)) == doctest::Approx(FiniteKernel(biorthogonal(6))(0.2, 0.3)));
}
