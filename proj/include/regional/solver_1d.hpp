#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "regional/exponents.hpp"
#include "regional/mesh.hpp"
#include "regional/quadrature.hpp"
#include "regional/special.hpp"

namespace regional {

enum class BoundaryCondition { neumann, dirichlet };

/// Assembled Galerkin data for the energy (c_{1,s}/2) [u]^2_{H^s(0,1)}.
struct GalerkinSystem {
  GradedMesh mesh;
  double s = 0.5;
  Eigen::MatrixXd A;       // full stiffness, constants in kernel
  Eigen::VectorXd hat_integrals;  // m_i = integral of hat i (constraint/load)
};

/// Nodal finite element solution with its boundary-quotient view.
struct Solution {
  GradedMesh mesh;
  double s = 0.5;
  BoundaryCondition bc = BoundaryCondition::neumann;
  Eigen::VectorXd u;
  double mean_correction = 0.0;  // subtracted mean of f (Neumann only)

  double eval(double x) const {
    const auto& nd = mesh.nodes;
    if (x <= nd[0]) return u[0];
    if (x >= nd[nd.size() - 1]) return u[u.size() - 1];
    const auto it = std::upper_bound(nd.data(), nd.data() + nd.size(), x);
    const Eigen::Index j = it - nd.data();  // nd[j-1] <= x < nd[j]
    const double t = (x - nd[j - 1]) / (nd[j] - nd[j - 1]);
    return (1.0 - t) * u[j - 1] + t * u[j];
  }

  /// u / delta^{2s-1} with delta = min(x, 1-x).
  double boundary_quotient(double x) const {
    const double d = std::min(x, 1.0 - x);
    return eval(x) * std::pow(d, 1.0 - 2.0 * s);
  }
};

/// Coefficients of the near-boundary expansion u = c0 + a0 x^{2s-1} + a1 x^{b1}.
struct BoundaryExpansion {
  double c0 = 0.0;
  double a0 = 0.0;
  double a1 = 0.0;
  double beta1 = 0.0;
  double window = 0.0;
  double residual_rms = 0.0;
  double condition = 0.0;
  bool a0_indeterminate = false;  // basis degenerates when |2s-1| < 1e-3
};

/// Per-window log-log growth estimate of the post-fit remainder.
struct HolderEstimate {
  std::vector<double> window_slopes;
  std::vector<bool> window_inconclusive;
  double slope = std::numeric_limits<double>::quiet_NaN();  // mean of usable windows
  double spread = 0.0;
  bool inconclusive = false;  // no window rose above the error floor
};

namespace detail {

// Accumulate the local interaction of up to `m` hat functions over a tensor
// quadrature cell [xl,xr] x [yl,yr] against |x-y|^{-1-2s}. `hat(i,t)` is the
// i-th involved hat at t; `idx` maps to global rows of A.
template <typename Hat>
void accumulate_cell(Eigen::MatrixXd& A, const int* idx, int m, Hat&& hat,
                     double xl, double xr, double yl, double yr, double s,
                     const QuadRule& rule) {
  const double lx = xr - xl, ly = yr - yl;
  if (!(lx > 0.0) || !(ly > 0.0)) return;
  double g[4];
  for (Eigen::Index a = 0; a < rule.nodes.size(); ++a) {
    const double x = xl + lx * rule.nodes[a];
    for (Eigen::Index b = 0; b < rule.nodes.size(); ++b) {
      const double y = yl + ly * rule.nodes[b];
      const double w = lx * ly * rule.weights[a] * rule.weights[b] *
                       std::pow(std::abs(x - y), -1.0 - 2.0 * s);
      for (int i = 0; i < m; ++i) g[i] = hat(i, x) - hat(i, y);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A(idx[i], idx[j]) += w * g[i] * g[j];
    }
  }
}

}  // namespace detail

/// Assemble the stiffness of D(u,v) = (c_{1,s}/2) double-integral of hat
/// differences against |x-y|^{-1-2s} over (0,1)^2, P1 hats on the mesh.
/// Identical element pairs are analytic, vertex-touching pairs use tensor
/// quadrature refined dyadically into the shared corner, separated pairs use
/// tensor Gauss with order scaled by proximity.
inline GalerkinSystem assemble(const GradedMesh& mesh, double s,
                               int corner_levels = 30, int gauss_points = 8) {
  detail::require_order(s);
  mesh.validate();
  if (std::abs(mesh.a()) > 1e-14 || std::abs(mesh.b() - 1.0) > 1e-14)
    throw std::invalid_argument("assemble: mesh must span [0,1]");

  const int n = mesh.size();
  const int dim = n + 1;
  const double c = c1s(s);
  GalerkinSystem sys;
  sys.mesh = mesh;
  sys.s = s;
  sys.A = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd& A = sys.A;
  const auto& nd = mesh.nodes;

  auto hat_on = [&](int node, double t) {
    const double l = node > 0 ? nd[node - 1] : nd[0];
    const double m = nd[node];
    const double r = node < n ? nd[node + 1] : nd[n];
    if (t <= l || t >= r) return (t == m) ? 1.0 : 0.0;
    return t < m ? (t - l) / (m - l) : (r - t) / (r - m);
  };

  const QuadRule corner_rule = gauss_legendre(6);

  // The form is (c/2) over the full square; unordered off-diagonal pairs are
  // visited once and count twice by x<->y symmetry, so they enter with
  // weight c while identical pairs enter with c/2.
  for (int e = 0; e < n; ++e) {
    // identical pair: differences are slope*(x-y), integral analytic.
    {
      const double l = nd[e + 1] - nd[e];
      const double I = std::pow(l, 3.0 - 2.0 * s) /
                       ((2.0 - 2.0 * s) * (3.0 - 2.0 * s));  // half of e x e
      const double sl[2] = {-1.0 / l, 1.0 / l};
      const int id[2] = {e, e + 1};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) A(id[i], id[j]) += sl[i] * sl[j] * I;
    }
    // adjacent pair (e, e+1): kernel singular only at the shared vertex.
    if (e + 1 < n) {
      const double v = nd[e + 1];
      const double lx = v - nd[e], ly = nd[e + 2] - v;
      const int idx[3] = {e, e + 1, e + 2};
      auto hat = [&](int i, double t) { return hat_on(idx[i], t); };
      // refinement bottoms out where panel widths reach rounding scale at v.
      const double floor_w = 32.0 * std::numeric_limits<double>::epsilon() *
                             (1.0 + std::abs(v));
      auto levels_for = [&](double len) {
        const int l = static_cast<int>(std::floor(std::log2(len / floor_w)));
        return std::max(1, std::min(corner_levels, l));
      };
      const int la = levels_for(lx), lb = levels_for(ly);
      for (int a = 0; a < la; ++a) {
        // panel a on the x side: [v - lx 2^{-a}, v - lx 2^{-a-1}]
        const double xl = v - lx * std::pow(0.5, a);
        const double xr = v - lx * std::pow(0.5, a + 1);
        for (int b = 0; b < lb; ++b) {
          const double pyl = v + ly * std::pow(0.5, b + 1);
          const double pyr = v + ly * std::pow(0.5, b);
          detail::accumulate_cell(A, idx, 3, hat, xl, xr, pyl, pyr, s, corner_rule);
          if (a + 1 == la)  // x stub against panel b
            detail::accumulate_cell(A, idx, 3, hat, xr, v, pyl, pyr, s, corner_rule);
          if (b + 1 == lb)  // panel a against y stub
            detail::accumulate_cell(A, idx, 3, hat, xl, xr, v, pyl, s, corner_rule);
        }
      }
      // the innermost stub-by-stub square is O(stub^{3-2s}): below rounding.
    }
    // separated pairs: dyadic panels toward the facing edges when the gap is
    // small relative to the element sizes, one tensor cell when it is not.
    for (int f = e + 2; f < n; ++f) {
      const double gap = nd[f] - nd[e + 1];
      const double le = nd[e + 1] - nd[e], lf = nd[f + 1] - nd[f];
      const auto depth = [&](double len) {
        if (len <= 2.0 * gap) return 1;
        return std::min(12, 2 + static_cast<int>(std::ceil(std::log2(len / gap))));
      };
      const int ax = depth(le), ay = depth(lf);
      const int idx[4] = {e, e + 1, f, f + 1};
      auto hat = [&](int i, double t) { return hat_on(idx[i], t); };
      const QuadRule rule = gauss_legendre(gauss_points);
      for (int a = 0; a < ax; ++a) {
        const double xl = (a == 0) ? nd[e] : nd[e + 1] - le * std::pow(0.5, a);
        const double xr = (a == ax - 1) ? nd[e + 1]
                                        : nd[e + 1] - le * std::pow(0.5, a + 1);
        for (int b = 0; b < ay; ++b) {
          const double yr = (b == 0) ? nd[f + 1] : nd[f] + lf * std::pow(0.5, b);
          const double yl = (b == ay - 1) ? nd[f]
                                          : nd[f] + lf * std::pow(0.5, b + 1);
          detail::accumulate_cell(A, idx, 4, hat, xl, xr, yl, yr, s, rule);
        }
      }
    }
  }

  A *= c;

  sys.hat_integrals.resize(dim);
  for (int i = 0; i <= n; ++i) {
    const double left = i > 0 ? nd[i] - nd[i - 1] : 0.0;
    const double right = i < n ? nd[i + 1] - nd[i] : 0.0;
    sys.hat_integrals[i] = 0.5 * (left + right);
  }
  return sys;
}

/// Load vector b_i = integral f * hat_i.
template <typename F>
Eigen::VectorXd load_vector(const GradedMesh& mesh, F&& f, int pts = 8) {
  const int n = mesh.size();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  const QuadRule rule = gauss_legendre(pts);
  for (int e = 0; e < n; ++e) {
    const double l = mesh.nodes[e], r = mesh.nodes[e + 1], h = r - l;
    for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
      const double x = l + h * rule.nodes[q];
      const double w = h * rule.weights[q] * f(x);
      const double t = (x - l) / h;
      b[e] += w * (1.0 - t);
      b[e + 1] += w * t;
    }
  }
  return b;
}

/// Free minimization of (c/2)[u]^2 - (f,u): mean-zero representative via a
/// Lagrange multiplier on the constant mode. f is projected onto mean zero
/// if needed and the correction recorded.
template <typename F>
Solution solve_neumann(F&& f, const GradedMesh& mesh, double s,
                       const GalerkinSystem* pre = nullptr) {
  GalerkinSystem local;
  const GalerkinSystem& sys = pre ? *pre : (local = assemble(mesh, s));
  const int dim = static_cast<int>(sys.A.rows());

  const QuadRule rule = gauss_legendre(16);
  const double mean = rule.apply(f, 0.0, 1.0);
  auto f0 = [&](double x) { return f(x) - mean; };
  Eigen::VectorXd b = load_vector(mesh, f0);

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(dim + 1, dim + 1);
  B.topLeftCorner(dim, dim) = sys.A;
  B.topRightCorner(dim, 1) = sys.hat_integrals;
  B.bottomLeftCorner(1, dim) = sys.hat_integrals.transpose();
  Eigen::VectorXd rhs(dim + 1);
  rhs.head(dim) = b;
  rhs[dim] = 0.0;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
  const Eigen::VectorXd z = lu.solve(rhs);
  if (!z.allFinite())
    throw std::runtime_error("solve_neumann: singular bordered system");

  Solution sol;
  sol.mesh = mesh;
  sol.s = s;
  sol.bc = BoundaryCondition::neumann;
  sol.u = z.head(dim);
  sol.mean_correction = mean;
  return sol;
}

/// Minimization over the endpoint-pinned hat space; s > 1/2 only (trace
/// obstruction below).
template <typename F>
Solution solve_dirichlet(F&& f, const GradedMesh& mesh, double s,
                         const GalerkinSystem* pre = nullptr) {
  if (!(s > 0.5))
    throw std::invalid_argument(
        "Dirichlet requires s > 1/2: H^s_0(0,1) carries no trace otherwise");
  GalerkinSystem local;
  const GalerkinSystem& sys = pre ? *pre : (local = assemble(mesh, s));
  const int dim = static_cast<int>(sys.A.rows());
  const Eigen::VectorXd b = load_vector(mesh, f);

  const Eigen::MatrixXd Ai = sys.A.block(1, 1, dim - 2, dim - 2);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(Ai);
  const Eigen::VectorXd ui = ldlt.solve(b.segment(1, dim - 2));
  if (ldlt.info() != Eigen::Success || !ui.allFinite())
    throw std::runtime_error("solve_dirichlet: reduced solve failed");

  Solution sol;
  sol.mesh = mesh;
  sol.s = s;
  sol.bc = BoundaryCondition::dirichlet;
  sol.u = Eigen::VectorXd::Zero(dim);
  sol.u.segment(1, dim - 2) = ui;
  return sol;
}

/// Least-squares fit of nodal values in (0, w) against {1, x^{2s-1}, x^{b1}}.
/// Near s = 1/2 the first two basis functions collide; the fit degenerates to
/// {1, x^{b1}} and a0 is reported indeterminate.
inline BoundaryExpansion fit_boundary_expansion(const Solution& sol, double s,
                                                double beta1, double window) {
  if (!(window > 0.0 && window <= 0.2))
    throw std::invalid_argument("fit window must lie in (0, 0.2]");
  std::vector<double> xs, us;
  for (Eigen::Index i = 1; i < sol.mesh.nodes.size(); ++i) {
    const double x = sol.mesh.nodes[i];
    if (x >= window) break;
    xs.push_back(x);
    us.push_back(sol.u[i]);
  }
  if (xs.size() < 8)
    throw std::invalid_argument("fit window contains fewer than 8 nodes");

  const bool degenerate = std::abs(2.0 * s - 1.0) < 1e-3;
  const int cols = degenerate ? 2 : 3;
  Eigen::MatrixXd V(xs.size(), cols);
  Eigen::VectorXd rhs(xs.size());
  for (size_t r = 0; r < xs.size(); ++r) {
    V(r, 0) = 1.0;
    if (degenerate) {
      V(r, 1) = std::pow(xs[r], beta1);
    } else {
      V(r, 1) = std::pow(xs[r], 2.0 * s - 1.0);
      V(r, 2) = std::pow(xs[r], beta1);
    }
    rhs[r] = us[r];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
  const Eigen::VectorXd coef = qr.solve(rhs);
  const Eigen::VectorXd resid = V * coef - rhs;

  BoundaryExpansion fit;
  fit.beta1 = beta1;
  fit.window = window;
  fit.c0 = coef[0];
  if (degenerate) {
    fit.a0 = 0.0;
    fit.a0_indeterminate = true;
    fit.a1 = coef[1];
  } else {
    fit.a0 = coef[1];
    fit.a1 = coef[2];
  }
  fit.residual_rms = std::sqrt(resid.squaredNorm() / resid.size());
  const auto& R = qr.matrixR();
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cols; ++i) {
    const double d = std::abs(R(i, i));
    dmax = std::max(dmax, d);
    dmin = std::min(dmin, d);
  }
  fit.condition = dmin > 0.0 ? dmax / dmin : std::numeric_limits<double>::infinity();
  return fit;
}

/// Growth exponent of the remainder u - c0 - a0 x^{2s-1} over dyadic windows
/// x in (2^{-j-1} w, 2^{-j} w), j = 0..4. Windows where the remainder sits
/// below 10x the discretization error estimate are flagged.
inline HolderEstimate estimate_boundary_holder(const Solution& sol,
                                               const BoundaryExpansion& fit,
                                               double disc_error) {
  HolderEstimate est;
  const double w = fit.window;
  // the subtracted trend is only trustworthy above the fit's own residual
  disc_error = std::max(disc_error, fit.residual_rms);
  int usable = 0;
  double sum = 0.0;
  std::vector<double> used;
  for (int j = 0; j <= 4; ++j) {
    const double lo = w * std::pow(0.5, j + 1), hi = w * std::pow(0.5, j);
    std::vector<double> lx, lr;
    bool floored = false;
    for (Eigen::Index i = 1; i < sol.mesh.nodes.size(); ++i) {
      const double x = sol.mesh.nodes[i];
      if (x < lo || x >= hi) continue;
      const double trend =
          fit.a0_indeterminate ? fit.c0
                               : fit.c0 + fit.a0 * std::pow(x, 2.0 * sol.s - 1.0);
      const double r = std::abs(sol.u[i] - trend);
      if (r < 10.0 * disc_error) {
        floored = true;
        continue;
      }
      lx.push_back(std::log(x));
      lr.push_back(std::log(r));
    }
    double slope = std::numeric_limits<double>::quiet_NaN();
    bool bad = floored || lx.size() < 3;
    if (!bad) {
      const double n = static_cast<double>(lx.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (size_t t = 0; t < lx.size(); ++t) {
        sx += lx[t];
        sy += lr[t];
        sxx += lx[t] * lx[t];
        sxy += lx[t] * lr[t];
      }
      slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      ++usable;
      sum += slope;
      used.push_back(slope);
    }
    est.window_slopes.push_back(slope);
    est.window_inconclusive.push_back(bad);
  }
  if (usable == 0) {
    est.inconclusive = true;
    return est;
  }
  est.slope = sum / usable;
  for (double sl : used) est.spread = std::max(est.spread, std::abs(sl - est.slope));
  return est;
}

}  // namespace regional
