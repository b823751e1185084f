#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/airy.hpp>

#include "tmm/painleve.hpp"

using namespace tmm;

TEST_CASE("Hastings-McLeod solution") {
  const auto& hm = hm_default();
  auto c = hm_checks(hm);
  CHECK(c.pii_residual < 1e-8);
  CHECK(c.hamiltonian_residual < 1e-8);
  CHECK(c.positive);
  CHECK(c.decreasing_above_1);
  // independent Airy routine
  CHECK(std::abs(hastings_mcleod(8).q / boost::math::airy_ai(8.0) - 1) < 1e-4);
  CHECK(std::abs(airy_ai(2.5) - boost::math::airy_ai(2.5)) < 1e-14);
  // shooting from the Airy side against collocation
  CHECK(std::abs(hm_shooting(0.0).first - hastings_mcleod(0).q) < 1e-7);
  // q(0) as produced by the solve
  CHECK(hastings_mcleod(0).q == doctest::Approx(0.36706155154807296).epsilon(1e-9));
}

TEST_CASE("u' = -q^2") {
  for (double s : {-2.0, 0.0, 2.0}) {
    double h = 1e-3;
    double du = (hastings_mcleod(s + h).u - hastings_mcleod(s - h).u) / (2 * h);
    double q = hastings_mcleod(s).q;
    CHECK(std::abs(du + q * q) < 1e-6);
  }
  CHECK_THROWS_AS(hastings_mcleod(20.0), Error);
}
