#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "regional/quadrature.hpp"
#include "regional/special.hpp"

namespace regional {

enum class Domain1D { interval, halfline };

/// A scalar function with its first derivative, defined on (0,L) or the
/// half-line. `power` declares u(y) = y^power exactly, which enables the
/// analytic half-line tail and the singular-endpoint stub.
struct SampledFunction {
  Domain1D domain = Domain1D::interval;
  double length = 1.0;
  std::function<double(double)> value;
  std::function<double(double)> deriv;
  std::optional<double> power;
  bool endpoint_derivative_zero = false;

  /// Spot-check that deriv matches a central difference of value.
  void validate_derivative(std::initializer_list<double> points,
                           double tol = 1e-6) const {
    for (double x : points) {
      const double step = 1e-6 * std::max(1.0, std::abs(x));
      const double fd = (value(x + step) - value(x - step)) / (2.0 * step);
      if (std::abs(fd - deriv(x)) > tol * (1.0 + std::abs(fd)))
        throw std::invalid_argument("SampledFunction: derivative inconsistent at x=" +
                                    std::to_string(x));
    }
  }

  static SampledFunction power_halfline(double beta) {
    SampledFunction u;
    u.domain = Domain1D::halfline;
    u.value = [beta](double y) { return std::pow(y, beta); };
    u.deriv = [beta](double y) { return beta * std::pow(y, beta - 1.0); };
    u.power = beta;
    return u;
  }

  static SampledFunction power_interval(double beta, double L = 1.0) {
    SampledFunction u;
    u.domain = Domain1D::interval;
    u.length = L;
    u.value = [beta](double y) { return std::pow(y, beta); };
    u.deriv = [beta](double y) { return beta * std::pow(y, beta - 1.0); };
    u.power = beta;
    return u;
  }

  static SampledFunction constant(double c, Domain1D dom = Domain1D::interval,
                                  double L = 1.0) {
    SampledFunction u;
    u.domain = dom;
    u.length = L;
    u.value = [c](double) { return c; };
    u.deriv = [](double) { return 0.0; };
    u.power = 0.0;
    u.endpoint_derivative_zero = true;
    return u;
  }

  static SampledFunction cosine_pi(double L = 1.0) {
    SampledFunction u;
    u.domain = Domain1D::interval;
    u.length = L;
    u.value = [](double y) { return std::cos(std::numbers::pi * y); };
    u.deriv = [](double y) {
      return -std::numbers::pi * std::sin(std::numbers::pi * y);
    };
    u.endpoint_derivative_zero = true;
    return u;
  }
};

/// Quadrature policy for the principal-value evaluation.
struct PVScheme {
  double h = 0.0;                   // near-field radius; 0 = automatic
  int subtraction_order = 2;        // must be 2 for s >= 1/2
  int nearfield_points = 48;        // Gauss-Jacobi order for the near field
  int panel_points = 14;            // Gauss order per far-field panel
  double tail_radius_factor = 1e3;  // half-line truncation R = factor*max(1,x)
  // Floor set by cancellation in the second difference, not by the rule.
  double tol = 1e-7;

  void validate(double s) const {
    if (subtraction_order != 1 && subtraction_order != 2)
      throw std::invalid_argument("PVScheme: subtraction order must be 1 or 2");
    if (s >= 0.5 && subtraction_order != 2)
      throw std::invalid_argument("PVScheme: s >= 1/2 requires order-2 subtraction");
    if (h < 0.0) throw std::invalid_argument("PVScheme: h must be positive");
  }
};

namespace detail {

// Symmetrized near field: integral_0^h (2u(x)-u(x+t)-u(x-t)) t^{-1-2s} dt.
// The symmetric pairing realizes the p.v. limit exactly. One integration by
// parts trades the second difference of u for a first difference of u',
// which keeps the cancellation noise at eps * h^{1-2s} instead of
// eps * h^{-2s}:
//   = (1/2s) [ integral_0^h t^{-2s} g(t) dt - h^{-2s} integral_0^h g ],
// with g(t) = u'(x-t) - u'(x+t).
inline double pv_near_field(const SampledFunction& u, double x, double s,
                            double h, int n) {
  auto g = [&](double t) { return u.deriv(x - t) - u.deriv(x + t); };
  const double weighted = integrate_power_weight(
      [&](double t) { return g(t) / t; }, h, 1.0 - 2.0 * s, n);
  const QuadRule gl = gauss_legendre(n / 2);
  const double plain = h * gl.apply(g, 0.0, h);
  return (weighted - std::pow(h, -2.0 * s) * plain) / (2.0 * s);
}

// Panels doubling away from the singular edge at distance h from x.
template <typename F>
double pv_panels_from_edge(F&& f, double d_lo, double d_hi, int pts) {
  if (d_hi <= d_lo) return 0.0;
  const QuadRule rule = gauss_legendre(pts);
  double acc = 0.0;
  double lo = d_lo;
  while (lo < d_hi) {
    const double hi = std::min(2.0 * lo, d_hi);
    acc += (hi - lo) * rule.apply(f, lo, hi);
    lo = hi;
  }
  return acc;
}

// Renormalized analytic tail over (R, infinity) for u(y) = amp * y^beta.
// Terms whose y-integral diverges are polynomial in x and belong to the
// counterterm of the growth-renormalized operator; their finite part at R
// is kept, which is exactly the antiderivative with the divergent limit
// discarded.
inline double pv_power_tail(double ux, double x, double beta, double amp,
                            double s, double R) {
  double coeff = 1.0;  // binomial (m+2s choose m)
  double acc = 0.0;
  const double z = x / R;
  double zm = 1.0;
  const double head = ux * std::pow(R, -2.0 * s);
  const double body = amp * std::pow(R, beta - 2.0 * s);
  for (int m = 0; m < 24; ++m) {
    if (m > 0) {
      coeff *= (m + 2.0 * s) / m;
      zm *= z;
    }
    const double denom = 2.0 * s + m - beta;
    if (std::abs(denom) < kPoleGuard)
      throw PoleError("pv_power_tail: beta within guard of 2s + m");
    const double term = coeff * zm * (head / (2.0 * s + m) - body / denom);
    acc += term;
    if (m > 2 && std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) break;
  }
  return acc;
}

}  // namespace detail

/// Pointwise (-Delta)^s_Omega u(x) by singularity-subtracted p.v. quadrature.
/// Near field: symmetric second-order Taylor subtraction over |y-x| < h.
/// Far field: geometric panels; half-line tails need a declared power.
inline double eval_pv(const SampledFunction& u, double x, double s,
                      PVScheme scheme = {}) {
  detail::require_order(s);
  scheme.validate(s);
  const bool half = (u.domain == Domain1D::halfline);
  const double L = half ? std::numeric_limits<double>::infinity() : u.length;
  if (!(x > 0.0) || !(x < L))
    throw std::domain_error("eval_pv: x must lie in the open domain");

  double h = scheme.h;
  if (h <= 0.0) h = std::min(std::min(x, half ? x : L - x) / 2.0, 0.1);

  const double near =
      detail::pv_near_field(u, x, s, h, scheme.nearfield_points);
  const double near_check =
      detail::pv_near_field(u, x, s, h, (2 * scheme.nearfield_points) / 3);
  const double kernel_pow = -1.0 - 2.0 * s;

  // Left far field (0, x-h): doubling panels resolve the kernel edge at
  // x-h, a dyadic split resolves a possible power singularity of u at 0,
  // and the remaining stub uses the declared power for a weighted rule.
  const double ux = u.value(x);
  double far_left = 0.0;
  if (x - h > 0.0) {
    auto f_d = [&](double d) {  // d = x - y
      return (ux - u.value(x - d)) * std::pow(d, kernel_pow);
    };
    far_left += detail::pv_panels_from_edge(f_d, h, 0.5 * x, scheme.panel_points);
    const double mid = std::min(0.5 * x, x - h);
    const double stub = mid * 1e-10;
    auto f_y = [&](double y) {
      return (ux - u.value(y)) * std::pow(x - y, kernel_pow);
    };
    far_left += integrate_dyadic(f_y, stub, mid, stub, 30, scheme.panel_points);
    // integral_0^stub (u(x) - u(y)) (x-y)^{-1-2s} dy
    auto kernel = [&](double y) { return std::pow(x - y, kernel_pow); };
    const QuadRule gl = gauss_legendre(8);
    far_left += ux * stub * gl.apply(kernel, 0.0, stub);
    if (u.power) {
      const double amp = u.value(stub) * std::pow(stub, -*u.power);
      far_left -= amp * integrate_power_weight(kernel, stub, *u.power, 12);
    } else {
      far_left -= stub * gl.apply([&](double y) { return u.value(y) * kernel(y); },
                                  0.0, stub);
    }
  }

  double far_right = 0.0;
  double tail = 0.0;
  if (half) {
    const double R = scheme.tail_radius_factor * std::max(1.0, x);
    auto f = [&](double d) {  // d = y - x
      return (ux - u.value(x + d)) * std::pow(d, kernel_pow);
    };
    far_right = detail::pv_panels_from_edge(f, h, R - x, scheme.panel_points);
    if (!u.power)
      throw std::invalid_argument(
          "eval_pv: half-line far field needs a declared power tail "
          "(compact support or decay rate)");
    const double amp = u.value(R) * std::pow(R, -*u.power);
    tail = detail::pv_power_tail(ux, x, *u.power, amp, s, R);
  } else {
    auto f = [&](double d) {
      return (u.value(x) - u.value(x + d)) * std::pow(d, kernel_pow);
    };
    far_right = detail::pv_panels_from_edge(f, h, L - x, scheme.panel_points);
  }

  const double total = c1s(s) * (near + far_left + far_right + tail);
  const double near_err = c1s(s) * std::abs(near - near_check);
  if (near_err > scheme.tol * (1.0 + std::abs(total)))
    throw std::runtime_error(
        "eval_pv: near-field quadrature error " + std::to_string(near_err) +
        " exceeds tolerance");
  return total;
}

/// Closed-form route: (-Delta)^s_{R_+} x^beta = C_reg(beta) x^{beta-2s}.
inline double eval_power_halfline(double beta, double x, double s) {
  if (!(x > 0.0)) throw std::domain_error("eval_power_halfline: x must be > 0");
  return regional_power_coeff(beta, s) * std::pow(x, beta - 2.0 * s);
}

/// Boundary-regrouped absolutely convergent formula on Omega = (0,1), valid
/// for s > 1/2 and u with vanishing endpoint derivatives; defined up to and
/// including the endpoints.
inline double eval_boundary_formula(const SampledFunction& u, double x, double s,
                                    int quad_points = 48) {
  detail::require_order(s);
  if (!(s > 0.5))
    throw std::domain_error("eval_boundary_formula requires s > 1/2");
  if (u.domain != Domain1D::interval || u.length != 1.0)
    throw std::invalid_argument("eval_boundary_formula expects the unit interval");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("eval_boundary_formula: x must lie in [0,1]");
  if (std::abs(u.deriv(0.0)) > 1e-10 || std::abs(u.deriv(1.0)) > 1e-10)
    throw std::invalid_argument(
        "eval_boundary_formula: formula requires vanishing endpoint "
        "derivatives (Neumann-compatible u)");

  const double ux = u.value(x);
  const double dux = u.deriv(x);
  const double p = 1.0 - 2.0 * s;

  double volume = 0.0;
  if (x > 0.0) {
    auto quotient_left = [&](double t) {
      return (ux - u.value(x - t) - dux * t) / (t * t);
    };
    volume += integrate_power_weight(quotient_left, x, p, quad_points);
  }
  if (x < 1.0) {
    auto quotient_right = [&](double t) {
      return (ux - u.value(x + t) + dux * t) / (t * t);
    };
    volume += integrate_power_weight(quotient_right, 1.0 - x, p, quad_points);
  }

  // 1D boundary term: endpoints b in {0,1} with normals -1 and +1.
  double boundary = 0.0;
  if (x != 1.0) boundary += (dux - u.deriv(1.0)) * std::pow(1.0 - x, p);
  if (x != 0.0) boundary -= (dux - u.deriv(0.0)) * std::pow(x, p);
  boundary /= (2.0 * s - 1.0);

  return c1s(s) * (volume + boundary);
}

}  // namespace regional
