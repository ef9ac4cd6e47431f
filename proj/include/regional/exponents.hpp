#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "regional/special.hpp"

namespace regional {

/// Thrown when a root bracket shows no sign change; carries sampled values.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plain bisection. The exponent equation has poles adjacent to every
/// bracket, so robustness wins over Newton here.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol, int max_iter = 200) {
  double flo = f(lo), fhi = f(hi);
  if (std::isnan(flo) || std::isnan(fhi) || (flo < 0.0) == (fhi < 0.0)) {
    std::ostringstream os;
    os << "bisect: no sign change on [" << lo << ", " << hi << "]; f(lo)=" << flo
       << ", f(hi)=" << fhi;
    throw BracketError(os.str());
  }
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct RootResidual {
  double g = std::numeric_limits<double>::quiet_NaN();  // |h1 - h2|
  double creg = std::numeric_limits<double>::quiet_NaN();
};

/// Critical homogeneity exponents beta_0..beta_K of the regional operator,
/// with alpha_s = beta_1 - 2s, per-root residuals and bracket provenance.
struct ExponentTable {
  double s = 0.0;
  std::vector<double> beta;
  double alpha_s = 0.0;
  std::vector<RootResidual> residuals;
  std::vector<std::pair<double, double>> brackets;
  std::string diagnostics;  // non-empty if a bracket showed >1 sign change
};

namespace detail {

inline double exponent_gap(double beta, double s) { return h1(beta, s) - h2(beta, s); }

}  // namespace detail

/// Residual report for a candidate root of the exponent equation.
struct RootReport {
  double h_residual = std::numeric_limits<double>::quiet_NaN();
  double creg_residual = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> beta_from_eigen;
};

inline RootReport verify_root(double beta, double s,
                              std::optional<double> lambda = std::nullopt) {
  RootReport report;
  try {
    report.h_residual = std::abs(detail::exponent_gap(beta, s));
  } catch (const std::domain_error&) {
    // h1/h2 undefined at kernel endpoints (e.g. beta_0); C_reg still applies.
  }
  report.creg_residual = std::abs(regional_power_coeff(beta, s));
  if (lambda) {
    const double shift = 0.5 * (2.0 * s - 1.0);
    report.beta_from_eigen = shift + std::sqrt(*lambda + shift * shift);
  }
  return report;
}

/// Solve the exponent equation h1(beta) = h2(beta) for beta_1..beta_K by
/// bisection inside the bracket (2s-1+k, s+k); beta_0 = max(2s-1, 0) is
/// analytic. h2 blows up at the left edge and vanishes at s+k, so the sign
/// change is structural.
inline ExponentTable critical_exponents(double s, int K, double tol = 1e-10) {
  detail::require_order(s);
  if (K < 1) throw std::invalid_argument("critical_exponents: K must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("critical_exponents: tol must be > 0");

  ExponentTable table;
  table.s = s;
  const double beta0 = std::max(2.0 * s - 1.0, 0.0);
  table.beta.push_back(beta0);
  table.brackets.emplace_back(beta0, beta0);
  {
    const RootReport r0 = verify_root(beta0, s);
    table.residuals.push_back(RootResidual{r0.h_residual, r0.creg_residual});
  }

  for (int k = 1; k <= K; ++k) {
    const double eps = 1e-6 * std::max(1.0, static_cast<double>(k));
    const double lo = 2.0 * s - 1.0 + k + eps;
    const double hi = s + k - eps;
    auto g = [s](double b) { return detail::exponent_gap(b, s); };

    // One root is proven to live here; flag any extra sign change we can see.
    int sign_changes = 0;
    double prev = g(lo);
    const int samples = 64;
    for (int i = 1; i <= samples; ++i) {
      const double b = lo + (hi - lo) * i / samples;
      const double cur = g(b);
      if ((cur < 0.0) != (prev < 0.0)) ++sign_changes;
      prev = cur;
    }
    if (sign_changes > 1) {
      std::ostringstream os;
      os << table.diagnostics << "bracket k=" << k << " shows " << sign_changes
         << " sign changes; ";
      table.diagnostics = os.str();
    }

    const double root = bisect(g, lo, hi, tol);
    table.beta.push_back(root);
    table.brackets.emplace_back(lo, hi);
    RootResidual res;
    res.g = std::abs(g(root));
    res.creg = std::abs(regional_power_coeff(root, s));
    table.residuals.push_back(res);
  }
  table.alpha_s = table.beta[1] - 2.0 * s;
  return table;
}

/// alpha_s = beta_1 - 2s, the sharp boundary Hoelder threshold.
inline double alpha_critical(double s, double tol = 1e-12) {
  return critical_exponents(s, 1, tol).alpha_s;
}

}  // namespace regional
