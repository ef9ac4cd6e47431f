#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "regional/mesh.hpp"
#include "regional/quadrature.hpp"

using namespace regional;

TEST_CASE("Gauss-Legendre integrates monomials exactly") {
  const QuadRule rule = gauss_legendre(6);
  for (int k = 0; k <= 11; ++k) {  // degree 2n-1 = 11
    const double got = rule.apply([k](double t) { return std::pow(t, k); }, 0.0, 1.0);
    CHECK(got == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
  }
  // Affine map: integral over (2,5) of x^2 dx = 39.
  const double got = 3.0 * rule.apply([](double x) { return x * x; }, 2.0, 5.0);
  CHECK(got == doctest::Approx(39.0).epsilon(1e-13));
}

TEST_CASE("Gauss-Jacobi handles the endpoint weight exactly") {
  // integral_0^1 t^p t^k dt = 1/(p+k+1)
  const double p = -0.5;
  const QuadRule rule = gauss_jacobi01(8, p);
  for (int k = 0; k <= 15; ++k) {
    const double got =
        rule.apply([k](double t) { return std::pow(t, k); }, 0.0, 1.0);
    CHECK(got == doctest::Approx(1.0 / (p + k + 1)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gauss_jacobi01(8, -1.0), std::invalid_argument);
}

TEST_CASE("integrate_power_weight scales to (0,L)") {
  // integral_0^L t^{-0.6} e^t dt via series check at L = 0.3
  const double L = 0.3, p = -0.6;
  double exact = 0.0, term;
  for (int k = 0; k < 30; ++k) {
    term = std::pow(L, p + k + 1) / ((p + k + 1) * std::tgamma(k + 1.0));
    exact += term;
  }
  const double got =
      integrate_power_weight([](double t) { return std::exp(t); }, L, p, 20);
  CHECK(got == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("dyadic panels resolve an endpoint singularity") {
  // integral_0^1 x^{-0.7} dx = 1/0.3, singular at the left endpoint.
  // the innermost stub is plain Gauss on the singular integrand, so the
  // truncation error floor is (2^-levels)^{1-0.7}
  const double got = integrate_dyadic(
      [](double x) { return std::pow(x, -0.7); }, 0.0, 1.0, 0.0, 40, 12);
  CHECK(got == doctest::Approx(1.0 / 0.3).epsilon(1e-3));
}

TEST_CASE("graded meshes hit endpoints and stay monotone") {
  const GradedMesh both = graded_mesh_both(32, 2.5);
  CHECK(both.a() == 0.0);
  CHECK(both.b() == 1.0);
  CHECK(both.size() == 32);
  CHECK_NOTHROW(both.validate());
  // spacing shrinks toward both ends
  const auto& nd = both.nodes;
  CHECK(nd[1] - nd[0] < nd[16] - nd[15]);
  CHECK(nd[32] - nd[31] < nd[17] - nd[16]);

  const GradedMesh right = graded_mesh_right(32, 3.0);
  CHECK(right.b() == 1.0);
  CHECK(right.nodes[32] - right.nodes[31] < right.nodes[1] - right.nodes[0]);
  CHECK_THROWS_AS(graded_mesh_both(1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(graded_mesh_right(8, 0.5), std::invalid_argument);
}
