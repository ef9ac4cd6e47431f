#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace regional {

inline constexpr double kPoleGuard = 1e-8;

/// Thrown when an evaluation point sits inside the guard band of a genuine
/// pole of a coefficient function.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require_order(double s) {
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("fractional order s must lie in (0,1), got s=" +
                            std::to_string(s));
}

// log|Gamma(x)| with the sign of Gamma(x); valid away from the poles.
inline std::pair<double, int> log_gamma_signed(double x) {
  if (x > 0.0) return {std::lgamma(x), 1};
  // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
  const double s = std::sin(std::numbers::pi * x);
  if (s == 0.0) throw std::domain_error("log_gamma_signed: pole at x=" + std::to_string(x));
  const double lg = std::log(std::numbers::pi / std::abs(s)) - std::lgamma(1.0 - x);
  return {lg, s > 0.0 ? 1 : -1};
}

inline double cot_pi(double x) {
  // cos(pi x)/sin(pi x); caller guards integer x.
  return std::cos(std::numbers::pi * x) / std::sin(std::numbers::pi * x);
}

inline double dist_to_integer(double x) {
  return std::abs(x - std::round(x));
}

}  // namespace detail

/// c_{N,s} = s 4^s Gamma(N/2+s) / (pi^{N/2} Gamma(1-s)), through log-Gamma.
inline double normalization_constant(int N, double s) {
  if (N < 1) throw std::domain_error("dimension must be >= 1");
  detail::require_order(s);
  if (s > 1.0 - 1e-6)
    throw std::domain_error("normalization constant blows up for s near 1");
  const double half_n = 0.5 * N;
  const double log_c = std::log(s) + 2.0 * s * std::log(2.0) +
                       std::lgamma(half_n + s) -
                       half_n * std::log(std::numbers::pi) - std::lgamma(1.0 - s);
  return std::exp(log_c);
}

/// Hardy coefficient a_s = c_{1,s}/(2s) = Gamma(2s) sin(pi s)/pi.
inline double hardy_coefficient(double s) {
  detail::require_order(s);
  return std::exp(std::lgamma(2.0 * s)) * std::sin(std::numbers::pi * s) /
         std::numbers::pi;
}

/// 1D kernel normalization c_{1,s} = (2s/pi) Gamma(2s) sin(pi s).
inline double c1s(double s) { return 2.0 * s * hardy_coefficient(s); }

/// Extension flux constant kappa_bar = Gamma(1-s) / (2^{2s-1} Gamma(s)).
inline double extension_constant(double s) {
  detail::require_order(s);
  return std::exp(std::lgamma(1.0 - s) - (2.0 * s - 1.0) * std::log(2.0) -
                  std::lgamma(s));
}

/// Beta-function side of the exponent equation:
/// h1(beta) = Gamma(beta-2s+1) Gamma(2s) / Gamma(beta+1), beta > 2s-1.
inline double h1(double beta, double s) {
  detail::require_order(s);
  if (!(beta > 2.0 * s - 1.0))
    throw std::domain_error("h1 requires beta > 2s-1");
  return std::exp(std::lgamma(beta - 2.0 * s + 1.0) + std::lgamma(2.0 * s) -
                  std::lgamma(beta + 1.0));
}

/// Trigonometric side of the exponent equation, in the 1-periodic tangent
/// decomposition h2(beta) = pi cot(pi(beta-2s)) + pi cot(pi s).
inline double h2(double beta, double s) {
  detail::require_order(s);
  if (detail::dist_to_integer(beta - 2.0 * s) < kPoleGuard)
    throw PoleError("h2: beta-2s within guard of an integer pole");
  return std::numbers::pi * detail::cot_pi(beta - 2.0 * s) +
         std::numbers::pi * detail::cot_pi(s);
}

/// Coefficient of the full-space operator on half-line powers:
/// (-Delta)^s (x_+)^beta = C_full(beta) (x_+)^{beta-2s}.
/// Poles at beta in 2s + {0,1,2,...}; removable points below 2s evaluate to
/// the finite limit through the reflection-stabilized product form.
inline double full_power_coeff(double beta, double s) {
  detail::require_order(s);
  if (!(beta > -1.0)) throw std::domain_error("full_power_coeff requires beta > -1");
  const double shifted = beta - 2.0 * s;
  if (shifted > -kPoleGuard && detail::dist_to_integer(shifted) < kPoleGuard)
    throw PoleError("full_power_coeff: beta within guard of pole at 2s + m");
  if (beta < 2.0 * s) {
    // -Gamma(beta+1) Gamma(2s-beta) sin(pi(beta-s)) / pi: no 0*inf ambiguity.
    return -std::exp(std::lgamma(beta + 1.0) + std::lgamma(2.0 * s - beta)) *
           std::sin(std::numbers::pi * (beta - s)) / std::numbers::pi;
  }
  // beta > 2s: both Gamma arguments are positive; the quotient form is stable.
  return std::exp(std::lgamma(beta + 1.0) - std::lgamma(beta - 2.0 * s + 1.0)) *
         std::sin(std::numbers::pi * (beta - s)) /
         std::sin(std::numbers::pi * shifted);
}

/// Coefficient of the regional operator on the half-line:
/// (-Delta)^s_{R_+} x^beta = C_reg(beta) x^{beta-2s}, C_reg = C_full - a_s.
inline double regional_power_coeff(double beta, double s) {
  return full_power_coeff(beta, s) - hardy_coefficient(s);
}

/// Coefficient kappa_s with (-Delta)^s_{R_+} x = kappa_s x^{1-2s}.
/// Analytically kappa_s = -c_{1,s}/(2s-1); the sign flips across s = 1/2.
inline double linear_power_coeff(double s) { return regional_power_coeff(1.0, s); }

/// The order s together with its cached kernel constants.
struct FracOrder {
  double s;
  double c1s;       // 1D normalization
  double a_s;       // Hardy coefficient c1s/(2s)
  double kappabar;  // extension flux constant

  explicit FracOrder(double order)
      : s(order),
        c1s(regional::c1s(order)),
        a_s(hardy_coefficient(order)),
        kappabar(extension_constant(order)) {}

  double cNs(int N) const { return normalization_constant(N, s); }
};

}  // namespace regional
