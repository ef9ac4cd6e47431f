#include <doctest.h>

#include <cmath>
#include <numbers>

#include "regional/special.hpp"

using namespace regional;

TEST_CASE("normalization constant matches closed forms") {
  // c_{2,1/2} = (1/2) 4^{1/2} Gamma(3/2) / (pi Gamma(1/2)) = 1/(2 pi)
  CHECK(normalization_constant(2, 0.5) ==
        doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-13));
  // c_{1,1/2} = (1/pi) Gamma(1) sin(pi/2) * 2*(1/2) = 1/pi
  CHECK(normalization_constant(1, 0.5) ==
        doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-13));
  CHECK_THROWS_AS(normalization_constant(0, 0.5), std::domain_error);
  CHECK_THROWS_AS(normalization_constant(2, 0.0), std::domain_error);
  CHECK_THROWS_AS(normalization_constant(2, 1.0), std::domain_error);
}

TEST_CASE("1D constants at s = 1/2") {
  CHECK(c1s(0.5) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-13));
  CHECK(hardy_coefficient(0.5) ==
        doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-13));
  CHECK(extension_constant(0.5) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("FracOrder caches the same values as the free functions") {
  const FracOrder fo(0.75);
  CHECK(fo.c1s == doctest::Approx(c1s(0.75)));
  CHECK(fo.a_s == doctest::Approx(hardy_coefficient(0.75)));
  CHECK(fo.kappabar == doctest::Approx(extension_constant(0.75)));
  CHECK(fo.cNs(2) == doctest::Approx(normalization_constant(2, 0.75)));
}

TEST_CASE("exponent-equation sides agree at a known root") {
  // At s = 1/2 the equation reduces to tan(pi beta) = pi beta;
  // the first root above 1 is beta_1 = 1.4302967...
  const double beta1 = 1.4302967;  // root to 8 digits
  CHECK(h1(beta1, 0.5) == doctest::Approx(h2(beta1, 0.5)).epsilon(1e-5));
  CHECK_THROWS_AS(h1(0.0, 0.75), std::domain_error);   // beta <= 2s-1
  CHECK_THROWS_AS(h2(1.5 + 1e-10, 0.75), PoleError);   // beta-2s near integer
}

TEST_CASE("power coefficients and their poles") {
  const double s = 0.75;
  // C_reg(2s-1) = 0: d^{2s-1} is in the kernel of the regional operator.
  CHECK(regional_power_coeff(2.0 * s - 1.0, s) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // kappa_s = -c_{1,s}/(2s-1) for the linear power.
  CHECK(linear_power_coeff(s) ==
        doctest::Approx(-c1s(s) / (2.0 * s - 1.0)).epsilon(1e-10));
  CHECK_THROWS_AS(full_power_coeff(2.0 * s, s), PoleError);
  CHECK_THROWS_AS(full_power_coeff(2.0 * s + 1.0, s), PoleError);
}
