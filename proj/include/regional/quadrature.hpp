#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace regional {

/// A one-dimensional quadrature rule on the reference interval (0,1).
struct QuadRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  /// Sample f on (a,b) against the reference weights. The caller multiplies
  /// by (b-a); weighted rules (gauss_jacobi01) carry their own scaling.
  template <typename F>
  double apply(F&& f, double a, double b) const {
    const double len = b - a;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i)
      acc += weights[i] * f(a + len * nodes[i]);
    return acc;
  }
};

namespace detail {

// Golub-Welsch for the Jacobi weight (1-x)^a (1+x)^b on [-1,1].
inline QuadRule golub_welsch_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
  Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 0);
  const double ab = a + b;
  diag[0] = (b - a) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double d = 2.0 * k + ab;
    diag[k] = (b * b - a * a) / (d * (d + 2.0));
  }
  if (n > 1) {
    sub[0] = std::sqrt(4.0 * (1.0 + a) * (1.0 + b) /
                       ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    for (int k = 2; k < n; ++k) {
      const double d = 2.0 * k + ab;
      sub[k - 1] = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + ab) /
                             (d * d * (d + 1.0) * (d - 1.0)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()[i];
    const double v = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

inline std::map<std::pair<int, long long>, QuadRule>& rule_cache() {
  static std::map<std::pair<int, long long>, QuadRule> cache;
  return cache;
}

inline std::mutex& rule_mutex() {
  static std::mutex m;
  return m;
}

inline QuadRule cached_jacobi01(int n, double p) {
  // Key the exponent by its bit pattern; exact-match caching is enough here.
  long long bits;
  static_assert(sizeof(bits) == sizeof(p));
  std::memcpy(&bits, &p, sizeof(bits));
  const auto key = std::make_pair(n, bits);
  std::lock_guard<std::mutex> lock(rule_mutex());
  auto it = rule_cache().find(key);
  if (it != rule_cache().end()) return it->second;
  QuadRule jac = golub_welsch_jacobi(n, 0.0, p);
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double scale = std::pow(2.0, -p - 1.0);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = 0.5 * (1.0 + jac.nodes[i]);
    rule.weights[i] = scale * jac.weights[i];
  }
  rule_cache().emplace(key, rule);
  return rule;
}

}  // namespace detail

/// Gauss-Legendre on (0,1): integrates f exactly for polynomials of degree 2n-1.
inline QuadRule gauss_legendre(int n) { return detail::cached_jacobi01(n, 0.0); }

/// Gauss-Jacobi on (0,1) for the weight t^p (p > -1): the returned rule
/// evaluates integral t^p f(t) dt when applied to the smooth factor f.
inline QuadRule gauss_jacobi01(int n, double p) {
  if (p <= -1.0) throw std::invalid_argument("gauss_jacobi01: exponent must be > -1");
  return detail::cached_jacobi01(n, p);
}

/// Weighted integral over (0,L) with endpoint weight t^p at t=0:
/// computes integral_0^L t^p f(t) dt.
template <typename F>
double integrate_power_weight(F&& f, double L, double p, int n) {
  const QuadRule rule = gauss_jacobi01(n, p);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(L * rule.nodes[i]);
  return acc * std::pow(L, p + 1.0);
}

/// Composite Gauss over (a,b) with dyadic panel refinement toward the point
/// `toward` (one of a or b). Panels shrink geometrically; the innermost stub
/// is integrated with the same rule (caller must ensure integrability).
template <typename F>
double integrate_dyadic(F&& f, double a, double b, double toward, int levels,
                        int pts_per_panel = 12) {
  if (b <= a) return 0.0;
  const QuadRule rule = gauss_legendre(pts_per_panel);
  const bool toward_left = std::abs(toward - a) < std::abs(toward - b);
  double acc = 0.0;
  const double near_pt = toward_left ? a : b;
  const double far_pt = toward_left ? b : a;
  for (int l = 0; l < levels; ++l) {
    const double inner = near_pt + (far_pt - near_pt) * std::pow(0.5, l + 1);
    const double outer = near_pt + (far_pt - near_pt) * std::pow(0.5, l);
    const double lo = std::min(inner, outer), hi = std::max(inner, outer);
    acc += (hi - lo) * rule.apply(f, lo, hi);
    if (l == levels - 1) {
      const double slo = std::min(near_pt, inner), shi = std::max(near_pt, inner);
      acc += (shi - slo) * rule.apply(f, slo, shi);
    }
  }
  return acc;
}

}  // namespace regional
