#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmm/measures.hpp"

using namespace tmm;

TEST_CASE("mu1") {
  auto p = critical_surface();
  auto m = mass_mu1(p);
  CHECK(std::abs(m.mass - 1.0) < 1e-6);
  CHECK(density_mu1(0.0, p) == 0.0);
  CHECK(density_mu1(1e-4, p) > 0.0);
  auto f = fit_mu1_power(p);
  CHECK(std::abs(f.exponent - 0.5) < 0.005);
  CHECK(f.K > 0);
  CHECK_THROWS_AS(density_mu1(3.2, p), Error);
}

TEST_CASE("mu2") {
  auto p = critical_surface();
  CHECK(std::abs(mass_mu2(p).mass - 2.0 / 3.0) < 1e-4);
  for (double y = 0.1; y < 5.0; y += 0.3) {
    CHECK(std::abs(density_mu2_complex(y, p).imag()) < 1e-8);
    CHECK(density_mu2(y, p) <= sigma2_density(y, p.alpha, p.tau) + 1e-10);
  }
}

TEST_CASE("mu3") {
  auto p = critical_surface();
  CHECK(std::abs(mass_mu3(p).mass - 1.0 / 3.0) < 1e-4);
  // at the multicritical point the gap (-x*, x*) has closed: the density is positive on all of R
  const double xs = 2 / (3 * std::sqrt(3.0));
  for (double x : {0.05, 0.2, 0.35, 0.4, 0.6, 1.5}) CHECK(density_mu3(x, p) > 0);
  CHECK(density_mu3(-0.2, p) == doctest::Approx(density_mu3(0.2, p)).epsilon(1e-10));
  // continuous across x*
  double a = density_mu3(xs - 1e-4, p), b = density_mu3(xs + 1e-4, p);
  CHECK(std::abs(a - b) < 1e-2);
  CHECK(std::abs(density_mu3_complex(0.7, p).imag()) < 1e-8);
}

TEST_CASE("sigma2") {
  CHECK(sigma2_density(0, -1, 1) == doctest::Approx(1 / pi).epsilon(1e-12));
  double y = 1e4;
  CHECK(std::abs(sigma2_density(y, -1, 1) - std::cos(pi / 6) * std::cbrt(y) / pi) < 1e-3 * std::cbrt(y) / pi);
  CHECK(sigma2_density(2.3, -1, 1) == doctest::Approx(sigma2_density(-2.3, -1, 1)).epsilon(1e-12));
}

TEST_CASE("xi integrals") {
  auto c = xi_integral_check(critical_surface());
  CHECK(std::abs(c.first - pi) < 1e-6);
  CHECK(std::abs(c.second + pi) < 1e-6);
  auto [al, ta] = scaled_params(1, 0, 1000000);
  auto p = make_surface(al, ta);
  auto d = xi_integral_check(p);
  CHECK(std::abs(d.first - pi) < 1e-6);
  CHECK(std::abs(d.second + pi) < 1e-6);
  CHECK(std::abs(d.first - pi * mass_mu1(p).mass) < 1e-6);
}
