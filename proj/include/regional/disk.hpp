#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "regional/mesh.hpp"
#include "regional/quadrature.hpp"
#include "regional/solver_1d.hpp"
#include "regional/special.hpp"

namespace regional {

/// Angularly collapsed kernel of the disk (N = 2):
/// W(r,rho) = integral_0^{2pi} (r^2 + rho^2 - 2 r rho cos phi)^{-(1+s)} dphi.
struct RadialKernel {
  double s;

  explicit RadialKernel(double order) : s(order) { detail::require_order(order); }

  /// Near-diagonal asymptotic coefficient: W ~ kappa(r) |r-rho|^{-1-2s}.
  double kappa(double r) const {
    return std::sqrt(std::numbers::pi) *
           std::exp(std::lgamma(s + 0.5) - std::lgamma(1.0 + s)) / r;
  }

  /// The phi-integral, resolved on the scale |r-rho| / (2 sqrt(r rho)) where
  /// the integrand peaks. Diagonal calls are rejected: the difference
  /// structure of the bilinear form must absorb the blow-up.
  double operator()(double r, double rho) const {
    if (!(r > 0.0) || !(rho >= 0.0) || r > 1.0 || rho > 1.0)
      throw std::invalid_argument("radial_weight: (r,rho) outside (0,1]^2");
    if (r == rho) throw std::invalid_argument("radial_weight: diagonal call");
    const double half_pi = 0.5 * std::numbers::pi;
    auto f = [&](double psi) {
      const double d = r - rho;
      const double sn = std::sin(psi);
      return 4.0 * std::pow(d * d + 4.0 * r * rho * sn * sn, -1.0 - s);
    };
    if (rho == 0.0) return 4.0 * half_pi * std::pow(r * r, -1.0 - s);
    const double scale = std::abs(r - rho) / (2.0 * std::sqrt(r * rho));
    const int levels = std::clamp(
        4 + static_cast<int>(std::ceil(std::log2(half_pi / std::min(scale, half_pi)))),
        4, 52);
    return integrate_dyadic(f, 0.0, half_pi, 0.0, levels, 12);
  }
};

inline double radial_weight(double r, double rho, double s) {
  return RadialKernel(s)(r, rho);
}

namespace detail {

// t^{1+2s} W(r, r-t) r (r-t): the smooth companion of the Gauss-Jacobi
// weight t^{1-2s} in diagonal-pair coordinates.
inline double diagonal_companion(const RadialKernel& W, double r, double t,
                                 double s) {
  const double rho = r - t;
  if (!(rho > 0.0) || !(t > 0.0)) return 0.0;
  return std::pow(t, 1.0 + 2.0 * s) * W(r, rho) * r * rho;
}

}  // namespace detail

/// Stiffness of the disk energy restricted to radial P1 functions:
/// D(u,v) = (c_{2,s}/2) 2pi double-int (u(r)-u(rho))(v(r)-v(rho)) W rho r.
/// Identical element pairs use difference coordinates with the Gauss-Jacobi
/// weight t^{1-2s}; vertex pairs refine dyadically into the corner; separated
/// pairs use panel tensor Gauss, as in the interval assembly.
inline GalerkinSystem assemble_radial(const GradedMesh& mesh, double s,
                                      int corner_levels = 22) {
  detail::require_order(s);
  mesh.validate();
  if (std::abs(mesh.a()) > 1e-14 || std::abs(mesh.b() - 1.0) > 1e-14)
    throw std::invalid_argument("assemble_radial: mesh must span [0,1]");

  const RadialKernel W(s);
  const int n = mesh.size();
  const int dim = n + 1;
  GalerkinSystem sys;
  sys.mesh = mesh;
  sys.s = s;
  sys.A = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd& A = sys.A;
  const auto& nd = mesh.nodes;
  // accumulation holds half the full (r,rho) square, so the (c/2)*2pi of the
  // radial form becomes c*2pi here.
  const double front = normalization_constant(2, s) * 2.0 * std::numbers::pi;

  auto hat_on = [&](int node, double t) {
    const double l = node > 0 ? nd[node - 1] : nd[0];
    const double m = nd[node];
    const double r = node < n ? nd[node + 1] : nd[n];
    if (t <= l || t >= r) return (t == m) ? 1.0 : 0.0;
    return t < m ? (t - l) / (m - l) : (r - t) / (r - m);
  };

  // generic tensor cell against the full kernel 2 pi W r rho (the 2pi and c/2
  // are folded into `front` at the end).
  const QuadRule corner_rule = gauss_legendre(5);
  auto cell = [&](const int* idx, int m, double xl, double xr, double yl,
                  double yr, const QuadRule& rule) {
    const double lx = xr - xl, ly = yr - yl;
    if (!(lx > 0.0) || !(ly > 0.0)) return;
    double g[4];
    for (Eigen::Index a = 0; a < rule.nodes.size(); ++a) {
      const double x = xl + lx * rule.nodes[a];
      for (Eigen::Index b = 0; b < rule.nodes.size(); ++b) {
        const double y = yl + ly * rule.nodes[b];
        if (x == y) continue;
        const double w = lx * ly * rule.weights[a] * rule.weights[b] *
                         W(std::max(x, y), std::min(x, y)) * x * y;
        for (int i = 0; i < m; ++i) g[i] = hat_on(idx[i], x) - hat_on(idx[i], y);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) A(idx[i], idx[j]) += w * g[i] * g[j];
      }
    }
  };

  const QuadRule outer = gauss_legendre(10);
  const QuadRule inner = gauss_jacobi01(12, 1.0 - 2.0 * s);

  for (int e = 0; e < n; ++e) {
    // identical pair in (r, t = r - rho) coordinates, lower triangle doubled;
    // counts once (both orderings) so it carries the extra 1/2 like the
    // interval case: total factor 2 * 1/2 = 1.
    {
      const double a = nd[e], b = nd[e + 1];
      const double l = b - a;
      const double sl[2] = {-1.0 / l, 1.0 / l};
      const int id[2] = {e, e + 1};
      double I = 0.0;
      for (Eigen::Index qa = 0; qa < outer.nodes.size(); ++qa) {
        const double r = a + l * outer.nodes[qa];
        const double L = r - a;
        if (!(L > 0.0)) continue;
        double acc = 0.0;
        for (Eigen::Index qb = 0; qb < inner.nodes.size(); ++qb) {
          const double t = L * inner.nodes[qb];
          acc += inner.weights[qb] * detail::diagonal_companion(W, r, t, s);
        }
        I += l * outer.weights[qa] * acc * std::pow(L, 2.0 - 2.0 * s);
      }
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) A(id[i], id[j]) += sl[i] * sl[j] * I;
    }
    // vertex-sharing pair.
    if (e + 1 < n) {
      const double v = nd[e + 1];
      const double lx = v - nd[e], ly = nd[e + 2] - v;
      const int idx[3] = {e, e + 1, e + 2};
      const double floor_w = 32.0 * std::numeric_limits<double>::epsilon() *
                             (1.0 + std::abs(v));
      auto levels_for = [&](double len) {
        const int l = static_cast<int>(std::floor(std::log2(len / floor_w)));
        return std::max(1, std::min(corner_levels, l));
      };
      const int la = levels_for(lx), lb = levels_for(ly);
      for (int a = 0; a < la; ++a) {
        const double xl = v - lx * std::pow(0.5, a);
        const double xr = v - lx * std::pow(0.5, a + 1);
        for (int b = 0; b < lb; ++b) {
          const double pyl = v + ly * std::pow(0.5, b + 1);
          const double pyr = v + ly * std::pow(0.5, b);
          cell(idx, 3, xl, xr, pyl, pyr, corner_rule);
          if (a + 1 == la) cell(idx, 3, xr, v, pyl, pyr, corner_rule);
          if (b + 1 == lb) cell(idx, 3, xl, xr, v, pyl, corner_rule);
        }
      }
    }
    // separated pairs.
    for (int f = e + 2; f < n; ++f) {
      const double gap = nd[f] - nd[e + 1];
      const double le = nd[e + 1] - nd[e], lf = nd[f + 1] - nd[f];
      const auto depth = [&](double len) {
        if (len <= 2.0 * gap) return 1;
        return std::min(12, 2 + static_cast<int>(std::ceil(std::log2(len / gap))));
      };
      const int ax = depth(le), ay = depth(lf);
      const int idx[4] = {e, e + 1, f, f + 1};
      const QuadRule rule = gauss_legendre(6);
      for (int a = 0; a < ax; ++a) {
        const double xl = (a == 0) ? nd[e] : nd[e + 1] - le * std::pow(0.5, a);
        const double xr = (a == ax - 1) ? nd[e + 1]
                                        : nd[e + 1] - le * std::pow(0.5, a + 1);
        for (int b = 0; b < ay; ++b) {
          const double yr = (b == 0) ? nd[f + 1] : nd[f] + lf * std::pow(0.5, b);
          const double yl = (b == ay - 1) ? nd[f]
                                          : nd[f] + lf * std::pow(0.5, b + 1);
          cell(idx, 4, xl, xr, yl, yr, rule);
        }
      }
    }
  }
  A *= front;

  sys.hat_integrals.resize(dim);  // 2pi int hat_i(r) r dr (volume element)
  const QuadRule mrule = gauss_legendre(6);
  sys.hat_integrals.setZero();
  for (int e = 0; e < n; ++e) {
    const double l = nd[e], r = nd[e + 1], h = r - l;
    for (Eigen::Index q = 0; q < mrule.nodes.size(); ++q) {
      const double x = l + h * mrule.nodes[q];
      const double w = 2.0 * std::numbers::pi * h * mrule.weights[q] * x;
      const double t = (x - l) / h;
      sys.hat_integrals[e] += w * (1.0 - t);
      sys.hat_integrals[e + 1] += w * t;
    }
  }
  return sys;
}

/// Radial Dirichlet solution on the unit disk with its boundary-quotient view
/// psi(r) = u(r) / (1-r)^{2s-1}.
struct RadialSolution {
  GradedMesh mesh;
  double s = 0.75;
  Eigen::VectorXd u;

  double psi(int node) const {
    const double d = 1.0 - mesh.nodes[node];
    if (!(d > 0.0)) throw std::invalid_argument("psi undefined at r=1");
    return u[node] * std::pow(d, 1.0 - 2.0 * s);
  }
};

/// Dirichlet solve on the disk for radial data f(r): pin only the node at
/// r=1 (the center is a free unknown; the 2D function is smooth there).
template <typename F>
RadialSolution solve_disk_dirichlet(F&& f, const GradedMesh& mesh, double s,
                                    const GalerkinSystem* pre = nullptr) {
  if (!(s > 0.5))
    throw std::invalid_argument(
        "Dirichlet requires s > 1/2: H^s_0 carries no trace otherwise");
  GalerkinSystem local;
  const GalerkinSystem& sys = pre ? *pre : (local = assemble_radial(mesh, s));
  const int dim = static_cast<int>(sys.A.rows());

  Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);
  const QuadRule rule = gauss_legendre(8);
  for (int e = 0; e < mesh.size(); ++e) {
    const double l = mesh.nodes[e], r = mesh.nodes[e + 1], h = r - l;
    for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
      const double x = l + h * rule.nodes[q];
      const double w = 2.0 * std::numbers::pi * h * rule.weights[q] * x * f(x);
      const double t = (x - l) / h;
      b[e] += w * (1.0 - t);
      b[e + 1] += w * t;
    }
  }

  const Eigen::MatrixXd Ai = sys.A.topLeftCorner(dim - 1, dim - 1);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(Ai);
  const Eigen::VectorXd ui = ldlt.solve(b.head(dim - 1));
  if (ldlt.info() != Eigen::Success || !ui.allFinite())
    throw std::runtime_error("solve_disk_dirichlet: reduced solve failed");

  RadialSolution sol;
  sol.mesh = mesh;
  sol.s = s;
  sol.u = Eigen::VectorXd::Zero(dim);
  sol.u.head(dim - 1) = ui;
  return sol;
}

namespace detail {

/// Pointwise regional operator on the unit disk for radial v, without the
/// front constant: PV int_0^1 (v(r0)-v(rho)) W(r0,rho) rho drho. The
/// symmetric near field runs through Gauss-Jacobi with the t^{1-2s} weight
/// factored out, so no node is small enough to cancel catastrophically.
template <typename V>
double radial_pv(const V& v, double r0, const RadialKernel& W) {
  const double s = W.s;
  const double h = 0.45 * std::min(r0, 1.0 - r0);
  auto companion = [&](double t) {
    const double sum = (v(r0) - v(r0 + t)) * W(r0, r0 + t) * (r0 + t) +
                       (v(r0) - v(r0 - t)) * W(r0, r0 - t) * (r0 - t);
    return std::pow(t, 2.0 * s - 1.0) * sum;
  };
  double acc = integrate_power_weight(companion, h, 1.0 - 2.0 * s, 40);
  auto far = [&](double rho) { return (v(r0) - v(rho)) * W(r0, rho) * rho; };
  const double lo = r0 - h, hi = r0 + h, mid = 0.5 * (hi + 1.0);
  acc += integrate_dyadic(far, 0.0, lo, lo, 30, 12);
  acc += integrate_dyadic(far, hi, mid, hi, 30, 12);
  acc += integrate_dyadic(far, mid, 1.0, 1.0, 40, 12);
  return acc;
}

}  // namespace detail

/// Logarithmic blow-up coefficients of the regional operator applied to the
/// boundary powers d^{2s-1} and d^{2s} on the unit disk (d = 1-r):
///   (-Delta)^s d^{2s-1} ~ g1 log d   (curvature of the circle),
///   (-Delta)^s d^{2s}   ~ g2 log d   (far-field cutoff; g2 = kappa(1)).
/// A bounded right-hand side forces the solution's boundary quotient
/// psi = u/d^{2s-1} to cancel the logs, which pins its normal derivative:
///   psi'(1)/psi(1) = g1/g2.
/// This is a pure-quadrature oracle, independent of the Galerkin assembly.
struct BoundaryLogReport {
  double g1 = 0.0;
  double g2 = 0.0;
  double ratio = 0.0;  // predicted psi'(1)/psi(1) = g1/g2
};

inline BoundaryLogReport boundary_log_ratio(double s, double d_hi = 1e-3,
                                            double d_lo = 1e-4) {
  detail::require_order(s);
  if (!(s > 0.5)) throw std::invalid_argument("boundary_log_ratio: s <= 1/2");
  const RadialKernel W(s);
  auto dist = [](double r) { return std::max(1.0 - r, 0.0); };
  auto v1 = [&](double r) { return std::pow(dist(r), 2.0 * s - 1.0); };
  auto v2 = [&](double r) { return std::pow(dist(r), 2.0 * s); };
  const double dl = std::log(d_lo / d_hi);
  BoundaryLogReport rep;
  rep.g1 = (detail::radial_pv(v1, 1.0 - d_lo, W) -
            detail::radial_pv(v1, 1.0 - d_hi, W)) / dl;
  rep.g2 = (detail::radial_pv(v2, 1.0 - d_lo, W) -
            detail::radial_pv(v2, 1.0 - d_hi, W)) / dl;
  rep.ratio = rep.g1 / rep.g2;
  return rep;
}

/// Boundary report for the unit disk: psi(1), psi'(1) and their ratio.
struct CurvatureReport {
  double psi1 = 0.0;   // extrapolated psi(1)
  double dpsi1 = 0.0;  // one-sided psi'(1), derivative in r
  double ratio = 0.0;  // dpsi1 / psi1
  double dispersion = 0.0;
  bool inconclusive = false;
};

/// Extract psi(1) and psi'(1) from the nodal boundary quotient by fitting
/// psi(d) = c0 + c1 d + c2 d^{1+alpha_s} + c3 d^{2s} log d (+ c4 d^{2s})
/// over d in (d_lo, d_hi). The d^{2s} column joins only when its exponent is
/// separated from 1+alpha_s; otherwise the two are too collinear to split.
/// d_lo grows as the mesh coarsens: below it, the piecewise-linear
/// interpolation error is amplified by d^{1-2s} and drowns the expansion.
/// Dispersion compares against a half-width refit.
inline CurvatureReport check_curvature_identity(const RadialSolution& sol,
                                                double alpha_s,
                                                double d_hi = 0.3) {
  const auto& nd = sol.mesh.nodes;
  const double s = sol.s;
  const int n = sol.mesh.size();
  const double d_lo = 2e-3 * std::pow(512.0 / n, 1.2);
  const bool with_plain = (2.0 * s - 1.0 - alpha_s) >= 0.4;

  auto fit_on = [&](double lo, double hi, double* out) {
    std::vector<double> ds, ps;
    for (int i = 0; i < n; ++i) {
      const double d = 1.0 - nd[i];
      if (d > lo && d < hi) {
        ds.push_back(d);
        ps.push_back(sol.psi(i));
      }
    }
    const int m = static_cast<int>(ds.size());
    const int nt = with_plain ? 5 : 4;
    if (m < nt + 3) return false;
    Eigen::MatrixXd V(m, nt);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
      const double d = ds[i];
      int c = 0;
      V(i, c++) = 1.0;
      V(i, c++) = d;
      V(i, c++) = std::pow(d, 1.0 + alpha_s);
      V(i, c++) = std::pow(d, 2.0 * s) * std::log(d);
      if (with_plain) V(i, c++) = std::pow(d, 2.0 * s);
      y[i] = ps[i];
    }
    const Eigen::VectorXd c = V.colPivHouseholderQr().solve(y);
    out[0] = c[0];
    out[1] = c[1];
    return true;
  };

  CurvatureReport rep;
  double main[2];
  if (!fit_on(d_lo, d_hi, main) || !(main[0] != 0.0)) {
    rep.inconclusive = true;
    return rep;
  }
  rep.psi1 = main[0];
  rep.dpsi1 = -main[1];  // d/dr = -d/dd
  rep.ratio = -main[1] / main[0];

  double half[2];
  if (fit_on(d_lo, 0.5 * d_hi, half) && half[0] != 0.0)
    rep.dispersion = std::abs(-half[1] / half[0] - rep.ratio);
  else
    rep.inconclusive = true;
  rep.inconclusive = rep.inconclusive || rep.dispersion > 0.15 ||
                     !std::isfinite(rep.ratio);
  return rep;
}

}  // namespace regional
