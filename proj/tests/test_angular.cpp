#include <doctest.h>

#include <cmath>

#include "regional/angular.hpp"
#include "regional/exponents.hpp"

using namespace regional;

TEST_CASE("assembled pencil is symmetric with positive-definite mass") {
  const double s = 0.75;
  const GradedMesh mesh = angular_mesh(48);
  auto [A, M] = assemble_angular(s, mesh);
  CHECK((A - A.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((M - M.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("lowest modes recover the homogeneity exponents at s = 1/2") {
  // Mode 0 carries the kernel power beta_0 = 2s-1 (lambda_0 = 0); at s = 1/2
  // the exponent equation reduces to tan(pi beta) = pi beta with first
  // nontrivial root beta_1 = 1.4302967 on mode 1.
  const double s = 0.5;
  const auto modes = angular_spectrum(s, 256, 3);
  REQUIRE(modes.size() == 3);
  CHECK(std::abs(modes[0].lambda) < 1e-5);
  const double beta1 = beta_from_lambda(modes[1].lambda, s);
  CHECK(beta1 == doctest::Approx(1.4302967).epsilon(2e-4));
  // eigenvalues come out sorted and the spectrum is simple
  CHECK(modes[0].lambda < modes[1].lambda);
  CHECK(modes[1].lambda < modes[2].lambda);
}

TEST_CASE("spectral route matches the bisection route across orders") {
  for (double s : {0.6, 0.75}) {
    const ExponentTable table = critical_exponents(s, 1);
    const auto modes = angular_spectrum(s, 256, 2);
    const double beta0 = beta_from_lambda(modes[0].lambda, s);
    const double beta1 = beta_from_lambda(modes[1].lambda, s);
    CHECK(beta0 == doctest::Approx(2.0 * s - 1.0).epsilon(1e-4));
    CHECK(beta1 == doctest::Approx(table.beta[1]).epsilon(2e-4));
  }
}

TEST_CASE("eigenvectors respect the Dirichlet node and sign convention") {
  const auto modes = angular_spectrum(0.75, 64, 2);
  for (const auto& m : modes) {
    CHECK(m.psi_values[m.psi_values.size() - 1] == 0.0);
    for (Eigen::Index i = 0; i < m.psi_values.size(); ++i) {
      if (std::abs(m.psi_values[i]) > 1e-12) {
        CHECK(m.psi_values[i] > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("beta_from_lambda input guards") {
  CHECK_THROWS_AS(beta_from_lambda(-10.0, 0.75), std::domain_error);
  const GradedMesh wrong = graded_mesh_both(16, 2.0, 0.0, 1.0);
  CHECK_THROWS_AS(assemble_angular(0.75, wrong), std::invalid_argument);
}
