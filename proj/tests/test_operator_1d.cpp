#include <doctest.h>

#include <cmath>

#include "regional/operator_1d.hpp"

using namespace regional;

TEST_CASE("p.v. evaluation matches the closed form on half-line powers") {
  for (double s : {0.35, 0.6, 0.75}) {
    // betas stay clear of the coefficient poles at 2s + {0,1,...}
    for (double beta : {0.8, 1.0, 1.3}) {
      const SampledFunction u = SampledFunction::power_halfline(beta);
      for (double x : {0.5, 1.0, 2.0}) {
        const double pv = eval_pv(u, x, s);
        const double exact = eval_power_halfline(beta, x, s);
        CHECK(pv == doctest::Approx(exact).epsilon(2e-6));
      }
    }
  }
}

TEST_CASE("constants are annihilated") {
  const SampledFunction c_int = SampledFunction::constant(3.0);
  const SampledFunction c_half =
      SampledFunction::constant(3.0, Domain1D::halfline);
  for (double s : {0.4, 0.75}) {
    CHECK(std::abs(eval_pv(c_int, 0.37, s)) < 1e-8);
    CHECK(std::abs(eval_pv(c_half, 0.37, s)) < 1e-8);
  }
}

TEST_CASE("the kernel power d^{2s-1} is harmonic for the regional operator") {
  for (double s : {0.6, 0.75, 0.9}) {
    const SampledFunction u = SampledFunction::power_halfline(2.0 * s - 1.0);
    const double pv = eval_pv(u, 1.0, s);
    CHECK(std::abs(pv) < 1e-6);
  }
}

TEST_CASE("scheme and domain validation") {
  const SampledFunction u = SampledFunction::cosine_pi();
  CHECK_THROWS_AS(eval_pv(u, -0.1, 0.75), std::domain_error);
  CHECK_THROWS_AS(eval_pv(u, 1.1, 0.75), std::domain_error);
  PVScheme bad;
  bad.subtraction_order = 1;
  CHECK_THROWS_AS(eval_pv(u, 0.5, 0.75, bad), std::invalid_argument);  // s>=1/2
  CHECK_NOTHROW(eval_pv(u, 0.5, 0.3, bad));  // order 1 is fine below 1/2
}

TEST_CASE("boundary-regrouped formula agrees with the p.v. route") {
  const double s = 0.75;
  const SampledFunction u = SampledFunction::cosine_pi();
  for (double x : {0.25, 0.5, 0.7}) {
    const double a = eval_pv(u, x, s);
    const double b = eval_boundary_formula(u, x, s);
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
  }
  // extends continuously to the endpoints
  CHECK(std::isfinite(eval_boundary_formula(u, 0.0, s)));
  CHECK(std::isfinite(eval_boundary_formula(u, 1.0, s)));
  // rejects s <= 1/2 and non-Neumann data
  CHECK_THROWS_AS(eval_boundary_formula(u, 0.5, 0.4), std::domain_error);
  const SampledFunction bad = SampledFunction::power_interval(1.0);
  CHECK_THROWS_AS(eval_boundary_formula(bad, 0.5, s), std::invalid_argument);
}

TEST_CASE("derivative spot-check catches inconsistent samples") {
  SampledFunction u = SampledFunction::cosine_pi();
  CHECK_NOTHROW(u.validate_derivative({0.25, 0.5, 0.75}));
  u.deriv = [](double) { return 42.0; };
  CHECK_THROWS_AS(u.validate_derivative({0.25}), std::invalid_argument);
}
