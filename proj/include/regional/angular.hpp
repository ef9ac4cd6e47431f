#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "regional/mesh.hpp"
#include "regional/quadrature.hpp"
#include "regional/special.hpp"

namespace regional {

/// Mesh on [0, pi] graded toward both endpoints, where the weight
/// sin(theta)^{1-2s} degenerates.
inline GradedMesh angular_mesh(int n, double mu = 2.0) {
  return graded_mesh_both(n, mu, 0.0, std::numbers::pi);
}

/// One generalized eigenpair of the angular problem
///   -(sin^{1-2s} psi')' = lambda sin^{1-2s} psi,
///   -lim sin^{1-2s} psi'(0) = kappabar_s a_s psi(0),  psi(pi) = 0,
/// with nodal values on the assembly mesh (last node pinned to 0).
struct EigenPair {
  int k = 0;
  double lambda = 0.0;
  Eigen::VectorXd psi_values;
};

namespace detail {

// integral over [lo,hi] of sin(theta)^{1-2s} * q(theta), with Gauss-Jacobi
// handling of the endpoint degeneracy when the element touches 0 or pi.
template <typename Q>
double weighted_element_integral(double lo, double hi, double s, Q&& q, int pts) {
  const double p = 1.0 - 2.0 * s;
  const double pi = std::numbers::pi;
  if (lo <= 0.0) {
    auto f = [&](double t) {
      const double ratio = t > 0.0 ? std::sin(t) / t : 1.0;
      return std::pow(ratio, p) * q(t);
    };
    return integrate_power_weight(f, hi, p, pts);
  }
  if (hi >= pi) {
    auto f = [&](double t) {  // t = pi - theta
      const double ratio = t > 0.0 ? std::sin(t) / t : 1.0;
      return std::pow(ratio, p) * q(pi - t);
    };
    return integrate_power_weight(f, pi - lo, p, pts);
  }
  const QuadRule rule = gauss_legendre(pts);
  auto f = [&](double t) { return std::pow(std::sin(t), p) * q(t); };
  return (hi - lo) * rule.apply(f, lo, hi);
}

}  // namespace detail

/// Assemble the weighted P1 stiffness/mass pair on the mesh, with the Robin
/// rank-one term at theta=0 and the Dirichlet node at theta=pi eliminated.
/// Returned matrices have dimension (#nodes - 1).
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> assemble_angular(
    double s, const GradedMesh& mesh, int quad_points = 12) {
  detail::require_order(s);
  mesh.validate();
  const double pi = std::numbers::pi;
  if (std::abs(mesh.a()) > 1e-14 || std::abs(mesh.b() - pi) > 1e-12)
    throw std::invalid_argument("assemble_angular: mesh must span [0, pi]");

  const int n = mesh.size();       // elements
  const int dim = n;               // free nodes 0..n-1 (node n is Dirichlet)
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);

  for (int e = 0; e < n; ++e) {
    const double lo = mesh.nodes[e], hi = mesh.nodes[e + 1];
    const double h = hi - lo;
    const double w0 = detail::weighted_element_integral(
        lo, hi, s, [](double) { return 1.0; }, quad_points);
    if (!std::isfinite(w0))
      throw std::runtime_error("assemble_angular: non-finite weighted element integral");
    // hats: phi_e = (hi - t)/h, phi_{e+1} = (t - lo)/h; derivatives -1/h, 1/h.
    const double k_ee = w0 / (h * h);
    auto mass = [&](auto&& qi, auto&& qj) {
      return detail::weighted_element_integral(
          lo, hi, s, [&](double t) { return qi(t) * qj(t); }, quad_points);
    };
    auto left = [&](double t) { return (hi - t) / h; };
    auto right = [&](double t) { return (t - lo) / h; };

    const bool li = e < dim, ri = e + 1 < dim;
    if (li) {
      A(e, e) += k_ee;
      M(e, e) += mass(left, left);
    }
    if (ri) {
      A(e + 1, e + 1) += k_ee;
      M(e + 1, e + 1) += mass(right, right);
    }
    if (li && ri) {
      A(e, e + 1) -= k_ee;
      A(e + 1, e) -= k_ee;
      const double m_lr = mass(left, right);
      M(e, e + 1) += m_lr;
      M(e + 1, e) += m_lr;
    }
  }

  // Natural Robin condition from the Rayleigh quotient: subtract
  // kappabar_s a_s psi(0)^2 from the quadratic form.
  A(0, 0) -= extension_constant(s) * hardy_coefficient(s);
  return {std::move(A), std::move(M)};
}

/// Lowest n_modes mass-normalized generalized eigenpairs of (A, M).
/// Nodal vectors carry the trailing Dirichlet zero; sign fixed by the first
/// nodal value of magnitude > 1e-12 being positive.
inline std::vector<EigenPair> eigen_solve(const Eigen::MatrixXd& A,
                                          const Eigen::MatrixXd& M, int n_modes) {
  if (A.rows() != A.cols() || M.rows() != M.cols() || A.rows() != M.rows())
    throw std::invalid_argument("eigen_solve: dimension mismatch");
  if (n_modes < 1 || n_modes > A.rows())
    throw std::invalid_argument("eigen_solve: n_modes out of range");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, M);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigen_solve: generalized eigensolver failed to converge");

  std::vector<EigenPair> out;
  out.reserve(n_modes);
  for (int k = 0; k < n_modes; ++k) {
    EigenPair p;
    p.k = k;
    p.lambda = es.eigenvalues()[k];
    Eigen::VectorXd v = es.eigenvectors().col(k);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v[i]) > 1e-12) {
        if (v[i] < 0.0) v = -v;
        break;
      }
    }
    p.psi_values.resize(v.size() + 1);
    p.psi_values.head(v.size()) = v;
    p.psi_values[v.size()] = 0.0;  // Dirichlet node at pi
    out.push_back(std::move(p));
  }
  return out;
}

/// Homogeneity exponent from an angular eigenvalue:
/// beta = (2s-1)/2 + sqrt(lambda + ((2s-1)/2)^2).
inline double beta_from_lambda(double lambda, double s) {
  detail::require_order(s);
  const double shift = 0.5 * (2.0 * s - 1.0);
  double radicand = lambda + shift * shift;
  if (radicand < -1e-12)
    throw std::domain_error("beta_from_lambda: negative radicand beyond tolerance");
  if (radicand < 0.0) radicand = 0.0;
  return shift + std::sqrt(radicand);
}

/// Convenience driver: mesh, assemble, solve.
inline std::vector<EigenPair> angular_spectrum(double s, int n, int n_modes,
                                               double mu = 2.0) {
  const GradedMesh mesh = angular_mesh(n, mu);
  auto [A, M] = assemble_angular(s, mesh);
  return eigen_solve(A, M, n_modes);
}

}  // namespace regional
