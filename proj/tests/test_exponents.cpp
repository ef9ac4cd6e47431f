#include <doctest.h>

#include <cmath>

#include "regional/exponents.hpp"

using namespace regional;

TEST_CASE("beta_1 at s = 1/2 solves tan(pi beta) = pi beta") {
  const ExponentTable table = critical_exponents(0.5, 3);
  CHECK(table.beta[1] == doctest::Approx(1.4302967).epsilon(1e-7));
  // roots sit strictly inside their brackets (2s-1+k, s+k)
  for (int k = 1; k <= 3; ++k) {
    CHECK(table.beta[k] > 2.0 * 0.5 - 1.0 + k);
    CHECK(table.beta[k] < 0.5 + k);
  }
  CHECK(table.diagnostics.empty());
}

TEST_CASE("exponent table structure across orders") {
  for (double s : {0.3, 0.6, 0.75, 0.9}) {
    const ExponentTable table = critical_exponents(s, 2);
    CHECK(table.beta[0] == doctest::Approx(std::max(2.0 * s - 1.0, 0.0)));
    CHECK(table.alpha_s == doctest::Approx(table.beta[1] - 2.0 * s));
    CHECK(table.alpha_s > 0.0);
    CHECK(table.alpha_s < 1.0 - s);  // alpha_s = beta_1 - 2s < (s+1) - 2s
    // each bisection root satisfies both residual checks
    for (size_t k = 1; k < table.beta.size(); ++k) {
      CHECK(table.residuals[k].g < 1e-6);
      CHECK(table.residuals[k].creg < 1e-8);
    }
  }
}

TEST_CASE("sharp boundary exponent at reference orders") {
  CHECK(alpha_critical(0.75) == doctest::Approx(0.2261).epsilon(5e-4));
  CHECK(alpha_critical(0.9) == doctest::Approx(0.0955).epsilon(5e-3));
}

TEST_CASE("verify_root cross-checks the coefficient route") {
  const ExponentTable table = critical_exponents(0.75, 1);
  const RootReport rep = verify_root(table.beta[1], 0.75);
  CHECK(rep.h_residual < 1e-6);
  CHECK(rep.creg_residual < 1e-8);
  // eigenvalue route: lambda = beta(beta-(2s-1)) reproduces beta
  const double shift = 2.0 * 0.75 - 1.0;
  const double lambda = table.beta[1] * (table.beta[1] - shift);
  const RootReport rep2 = verify_root(table.beta[1], 0.75, lambda);
  REQUIRE(rep2.beta_from_eigen.has_value());
  CHECK(*rep2.beta_from_eigen == doctest::Approx(table.beta[1]).epsilon(1e-12));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(critical_exponents(0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(critical_exponents(1.5, 1), std::domain_error);
  CHECK_THROWS_AS(critical_exponents(0.5, 1, -1.0), std::invalid_argument);
}
