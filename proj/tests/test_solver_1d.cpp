#include <doctest.h>

#include <cmath>

#include "regional/exponents.hpp"
#include "regional/solver_1d.hpp"

using namespace regional;

TEST_CASE("stiffness matrix is symmetric and kills constants") {
  const double s = 0.75;
  const GradedMesh mesh = graded_mesh_both(24, 2.0);
  const GalerkinSystem sys = assemble(mesh, s);
  CHECK((sys.A - sys.A.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  // constants lie in the kernel of the form: row sums vanish
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(sys.A.cols());
  CHECK((sys.A * ones).cwiseAbs().maxCoeff() <
        1e-9 * sys.A.cwiseAbs().maxCoeff());
  // hat integrals partition the interval
  CHECK(sys.hat_integrals.sum() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("Dirichlet solve rejects orders without a trace") {
  const GradedMesh mesh = graded_mesh_both(16, 2.0);
  auto f = [](double) { return 1.0; };
  CHECK_THROWS_AS(solve_dirichlet(f, mesh, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(solve_dirichlet(f, mesh, 0.5), std::invalid_argument);
}

TEST_CASE("Neumann solution is mean-zero and symmetric for symmetric data") {
  const double s = 0.75;
  const GradedMesh mesh = graded_mesh_both(48, 2.0);
  auto f = [](double x) { return std::cos(std::numbers::pi * x); };
  const Solution sol = solve_neumann(f, mesh, s);
  CHECK(std::abs(sol.mean_correction) < 1e-12);  // f already mean-zero
  // nodal mean-zero constraint
  double mean = 0.0;
  const GalerkinSystem sys = assemble(mesh, s);
  for (Eigen::Index i = 0; i < sol.u.size(); ++i)
    mean += sys.hat_integrals[i] * sol.u[i];
  CHECK(std::abs(mean) < 1e-10);
  // f(1-x) = -f(x) forces u(1-x) = -u(x)
  const int n = mesh.size();
  const double scale = sol.u.cwiseAbs().maxCoeff();
  for (int i = 0; i <= n / 2; ++i)
    CHECK(std::abs(sol.u[i] + sol.u[n - i]) < 1e-7 * scale);
}

TEST_CASE("boundary fit recovers a synthetic expansion") {
  const double s = 0.75;
  const double beta1 = critical_exponents(s, 1).beta[1];
  const GradedMesh mesh = graded_mesh_both(128, 3.0);
  Solution sol;
  sol.mesh = mesh;
  sol.s = s;
  sol.u.resize(mesh.nodes.size());
  for (Eigen::Index i = 0; i < mesh.nodes.size(); ++i) {
    const double x = mesh.nodes[i];
    sol.u[i] = 1.0 + 2.0 * std::pow(x, 2.0 * s - 1.0) + 3.0 * std::pow(x, beta1);
  }
  const BoundaryExpansion fit = fit_boundary_expansion(sol, s, beta1, 0.1);
  CHECK(fit.c0 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit.a0 == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(fit.a1 == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(fit.residual_rms < 1e-10);
  CHECK_FALSE(fit.a0_indeterminate);
}

TEST_CASE("fit degenerates gracefully at s = 1/2") {
  const double s = 0.5;
  const double beta1 = 1.4302967433402832;
  const GradedMesh mesh = graded_mesh_both(128, 3.0);
  Solution sol;
  sol.mesh = mesh;
  sol.s = s;
  sol.u.resize(mesh.nodes.size());
  for (Eigen::Index i = 0; i < mesh.nodes.size(); ++i)
    sol.u[i] = 2.0 + 0.5 * std::pow(mesh.nodes[i], beta1);
  const BoundaryExpansion fit = fit_boundary_expansion(sol, s, beta1, 0.1);
  CHECK(fit.a0_indeterminate);
  CHECK(fit.c0 == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(fit.a1 == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("fit window validation") {
  const GradedMesh mesh = graded_mesh_both(16, 2.0);
  Solution sol;
  sol.mesh = mesh;
  sol.s = 0.75;
  sol.u = Eigen::VectorXd::Zero(mesh.nodes.size());
  CHECK_THROWS_AS(fit_boundary_expansion(sol, 0.75, 1.7, 0.5),
                  std::invalid_argument);  // window too wide
  CHECK_THROWS_AS(fit_boundary_expansion(sol, 0.75, 1.7, 0.01),
                  std::invalid_argument);  // too few nodes inside
}
