#include <doctest.h>

#include <cmath>
#include <numbers>

#include "regional/disk.hpp"
#include "regional/exponents.hpp"

using namespace regional;

TEST_CASE("collapsed angular kernel: symmetry and flat-boundary asymptote") {
  const double s = 0.75;
  const RadialKernel W(s);
  CHECK(W(0.4, 0.7) == doctest::Approx(W(0.7, 0.4)).epsilon(1e-10));
  CHECK_THROWS_AS(W(0.5, 0.5), std::invalid_argument);
  // As |r - rho| -> 0 the circle looks flat:
  // W(r, rho) ~ kappa(r) |r - rho|^{-1-2s} with
  // kappa(r) = sqrt(pi) Gamma(s+1/2) / (r Gamma(1+s)).
  const double r = 0.8, gap = 1e-6;
  const double got = W(r, r + gap) * std::pow(gap, 1.0 + 2.0 * s);
  CHECK(got == doctest::Approx(W.kappa(r)).epsilon(1e-4));
  CHECK(W.kappa(1.0) ==
        doctest::Approx(std::sqrt(std::numbers::pi) *
                        std::tgamma(s + 0.5) / std::tgamma(1.0 + s))
            .epsilon(1e-12));
}

TEST_CASE("radial stiffness is symmetric and kills constants") {
  const double s = 0.75;
  const GradedMesh mesh = graded_mesh_right(16, 2.0);
  const GalerkinSystem sys = assemble_radial(mesh, s);
  CHECK((sys.A - sys.A.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(sys.A.cols());
  CHECK((sys.A * ones).cwiseAbs().maxCoeff() <
        1e-8 * sys.A.cwiseAbs().maxCoeff());
}

TEST_CASE("Dirichlet disk solve: positivity and boundary pinning") {
  const double s = 0.75;
  const GradedMesh mesh = graded_mesh_right(48, 3.0);
  const RadialSolution sol = solve_disk_dirichlet(
      [](double) { return 1.0; }, mesh, s);
  const int last = static_cast<int>(sol.u.size()) - 1;
  CHECK(sol.u[last] == 0.0);
  for (int i = 0; i < last; ++i) CHECK(sol.u[i] > 0.0);
  // boundary quotient stays bounded where u vanishes like d^{2s-1}
  CHECK(std::isfinite(sol.psi(last - 1)));
  CHECK_THROWS_AS(sol.psi(last), std::invalid_argument);
  CHECK_THROWS_AS(
      solve_disk_dirichlet([](double) { return 1.0; }, mesh, 0.4),
      std::invalid_argument);
}

TEST_CASE("log-cancellation oracle reproduces the flat-boundary constant") {
  for (double s : {0.75, 0.9}) {
    const BoundaryLogReport rep = boundary_log_ratio(s);
    const RadialKernel W(s);
    // the d^{2s} log coefficient is exactly the collapsed kernel amplitude
    CHECK(rep.g2 == doctest::Approx(W.kappa(1.0)).epsilon(1e-2));
    // curvature halves it with opposite sign: ratio near -1/2
    CHECK(rep.ratio == doctest::Approx(-0.5).epsilon(0.1));
  }
  CHECK_THROWS_AS(boundary_log_ratio(0.4), std::invalid_argument);
}

TEST_CASE("boundary quotient fit is reproducible on a solved disk") {
  const double s = 0.75;
  const double alpha = alpha_critical(s);
  const GradedMesh mesh = graded_mesh_right(128, 3.0);
  const RadialSolution sol = solve_disk_dirichlet(
      [](double) { return 1.0; }, mesh, s);
  const CurvatureReport rep = check_curvature_identity(sol, alpha);
  CHECK_FALSE(rep.inconclusive);
  CHECK(rep.psi1 > 0.0);
  CHECK(rep.ratio < 0.0);       // quotient decreases toward the boundary
  CHECK(rep.ratio > -1.5);      // and not wildly
  CHECK(rep.dispersion < 0.15);
}
