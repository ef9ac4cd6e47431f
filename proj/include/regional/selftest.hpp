#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "regional/angular.hpp"
#include "regional/disk.hpp"
#include "regional/exponents.hpp"
#include "regional/operator_1d.hpp"
#include "regional/solver_1d.hpp"
#include "regional/special.hpp"

namespace regional {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace selftest {

inline void check(bool ok, std::ostringstream& os, bool& pass,
                  const std::string& what) {
  if (!ok) {
    pass = false;
    os << (os.tellp() > 0 ? "; " : "") << what;
  }
}

// --- criterion 1: s = 1/2 roots against the tan x = x reduction -------------

inline CriterionResult criterion_exponents_half() {
  CriterionResult r{1, "exponent equation at s=1/2 vs tan x = x"};
  bool pass = true;
  std::ostringstream os;
  const ExponentTable table = critical_exponents(0.5, 2, 1e-12);
  for (int k = 1; k <= 2; ++k) {
    // k-th positive root of tan x = x lies in (k pi, k pi + pi/2);
    // sin x - x cos x changes sign there.
    const double lo = k * std::numbers::pi + 1e-12;
    const double hi = (k + 0.5) * std::numbers::pi - 1e-12;
    const double x = bisect(
        [](double t) { return std::sin(t) - t * std::cos(t); }, lo, hi, 1e-13);
    const double beta_ref = x / std::numbers::pi;
    check(std::abs(table.beta[k] - beta_ref) < 1e-6, os, pass,
          "beta_" + std::to_string(k) + " off: " + std::to_string(table.beta[k]) +
              " vs " + std::to_string(beta_ref));
  }
  check(std::abs(table.beta[1] - 1.4302967) < 1e-6, os, pass, "beta_1 != 1.4302967");
  check(std::abs(table.beta[2] - 2.4590241) < 5e-5, os, pass, "beta_2 != 2.4590");
  r.pass = pass;
  r.detail = pass ? "beta_1, beta_2 within 1e-6 of the tan x = x oracle" : os.str();
  return r;
}

// --- criterion 2: exponent bracket sweep -------------------------------------

inline CriterionResult criterion_exponent_sweep() {
  CriterionResult r{2, "exponent ordering/bracket sweep, K=5"};
  bool pass = true;
  std::ostringstream os;
  for (double s : {0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9}) {
    const ExponentTable t = critical_exponents(s, 5);
    const double beta0 = std::max(2.0 * s - 1.0, 0.0);
    check(t.beta[0] == beta0, os, pass, "beta_0 not exact at s=" + std::to_string(s));
    for (int k = 1; k <= 5; ++k) {
      check(t.beta[k] > k + beta0 && t.beta[k] < k + s, os, pass,
            "beta_k outside (k+beta0, k+s) at s=" + std::to_string(s));
      if (k >= 1 && k < 5)
        check(t.beta[k + 1] > 1.0 + t.beta[k], os, pass,
              "beta_{k+1} <= 1+beta_k at s=" + std::to_string(s));
    }
    check(t.alpha_s > 0.0 && t.alpha_s < 1.0 - s, os, pass,
          "alpha_s outside (0,1-s) at s=" + std::to_string(s));
    check(2.0 * s + t.alpha_s > 1.0, os, pass, "2s+alpha_s <= 1 at s=" + std::to_string(s));
    check(t.diagnostics.empty(), os, pass, "bracket diagnostic at s=" + std::to_string(s));
  }
  r.pass = pass;
  r.detail = pass ? "all orderings hold for 7 orders, K=5" : os.str();
  return r;
}

// --- criterion 3: kernel identities ------------------------------------------

inline CriterionResult criterion_kernel_identities() {
  CriterionResult r{3, "power-coefficient kernel identities"};
  bool pass = true;
  std::ostringstream os;
  for (double s : {0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9}) {
    check(std::abs(regional_power_coeff(0.0, s)) < 1e-12, os, pass,
          "C_reg(0) != 0 at s=" + std::to_string(s));
    if (s > 0.5)
      check(std::abs(regional_power_coeff(2.0 * s - 1.0, s)) < 1e-12, os, pass,
            "C_reg(2s-1) != 0 at s=" + std::to_string(s));
    const double direct = 2.0 * s / std::numbers::pi *
                          std::exp(std::lgamma(2.0 * s)) *
                          std::sin(std::numbers::pi * s);
    const double via_n = normalization_constant(1, s);
    check(std::abs(c1s(s) - direct) < 1e-12 * std::abs(direct), os, pass,
          "c_{1,s} direct route mismatch at s=" + std::to_string(s));
    check(std::abs(c1s(s) - via_n) < 1e-12 * std::abs(via_n), os, pass,
          "c_{1,s} vs c_{N,s}|N=1 mismatch at s=" + std::to_string(s));
  }
  r.pass = pass;
  r.detail = pass ? "C_reg(0), C_reg(2s-1), c_{1,s} identities at 1e-12" : os.str();
  return r;
}

// --- criterion 4: p.v. quadrature vs closed-form coefficients ----------------

inline CriterionResult criterion_pv_vs_closed_form() {
  CriterionResult r{4, "eval_pv vs closed-form power coefficients"};
  bool pass = true;
  std::ostringstream os;
  for (double s : {0.3, 0.6, 0.75}) {
    for (double beta : {s, 1.0, 2.0 * s - 1.0 + 0.3}) {
      const auto u = SampledFunction::power_halfline(beta);
      const double got = eval_pv(u, 1.0, s);
      const double want = eval_power_halfline(beta, 1.0, s);
      const double rel = std::abs(got - want) / (1.0 + std::abs(want));
      check(rel < 1e-5, os, pass,
            "rel=" + std::to_string(rel) + " at s=" + std::to_string(s) +
                ", beta=" + std::to_string(beta));
    }
  }
  r.pass = pass;
  r.detail = pass ? "9 (s,beta) pairs agree to better than 1e-5" : os.str();
  return r;
}

// --- criterion 5: angular eigenproblem ---------------------------------------

inline CriterionResult criterion_angular() {
  CriterionResult r{5, "angular eigenproblem vs exponent roots"};
  bool pass = true;
  std::ostringstream os;
  for (double s : {0.4, 0.5, 0.6, 0.75}) {
    const auto sp512 = angular_spectrum(s, 512, 2);
    check(std::abs(sp512[0].lambda) <= 1e-3 * sp512[1].lambda, os, pass,
          "lambda_0 too large at s=" + std::to_string(s));
    const double beta_ref = critical_exponents(s, 1).beta[1];
    const double b1 = beta_from_lambda(sp512[1].lambda, s);
    check(std::abs(b1 - beta_ref) < 1e-3 * beta_ref, os, pass,
          "beta_1 mismatch at s=" + std::to_string(s));
    if (s == 0.5) {
      const auto sp256 = angular_spectrum(s, 256, 2);
      const double l1 = (4.0 * sp512[1].lambda - sp256[1].lambda) / 3.0;
      const double want = beta_ref * beta_ref;
      check(std::abs(l1 - want) < 1e-4 * want, os, pass,
            "Richardson lambda_1 != beta_1^2 at s=1/2");
    }
  }
  r.pass = pass;
  r.detail = pass ? "lambda_0 ~ 0 and beta_1(lambda_1) matches for 4 orders" : os.str();
  return r;
}

// --- criterion 6: boundary formula equivalence --------------------------------

inline double pv_endpoint_extrapolation(const SampledFunction& u, double s) {
  // dyadic sequence toward x=0, accelerated by three iterated Aitken passes;
  // handles the slow x^{alpha_s} approach of the boundary limit.
  std::vector<double> seq;
  for (int j = 0; j < 16; ++j)
    seq.push_back(eval_pv(u, 0.02 * std::pow(0.5, j), s));
  for (int pass = 0; pass < 3; ++pass) {
    std::vector<double> next;
    for (size_t i = 0; i + 2 < seq.size(); ++i) {
      const double d1 = seq[i + 1] - seq[i], d2 = seq[i + 2] - seq[i + 1];
      const double den = d2 - d1;
      next.push_back(std::abs(den) > 1e-14 ? seq[i + 2] - d2 * d2 / den
                                           : seq[i + 2]);
    }
    seq = std::move(next);
  }
  return seq.back();
}

inline CriterionResult criterion_boundary_formula() {
  CriterionResult r{6, "boundary-regrouped formula vs p.v. route"};
  bool pass = true;
  std::ostringstream os;
  const auto u = SampledFunction::cosine_pi();
  for (double s : {0.6, 0.75}) {
    for (int i = 1; i <= 9; ++i) {
      const double x = 0.1 * i;
      const double pv = eval_pv(u, x, s);
      const double bf = eval_boundary_formula(u, x, s);
      check(std::abs(bf - pv) < 1e-4 * (1.0 + std::abs(pv)), os, pass,
            "interior mismatch at s=" + std::to_string(s) + ", x=" + std::to_string(x));
    }
    const double bf0 = eval_boundary_formula(u, 0.0, s);
    const double limit = pv_endpoint_extrapolation(u, s);
    check(std::abs(bf0 - limit) < 1e-3, os, pass,
          "endpoint mismatch " + std::to_string(std::abs(bf0 - limit)) +
              " at s=" + std::to_string(s));
  }
  r.pass = pass;
  r.detail = pass ? "9 interior points < 1e-4 and endpoint limit < 1e-3, s in {0.6,0.75}"
                  : os.str();
  return r;
}

// --- criterion 7: Neumann structure ------------------------------------------

inline CriterionResult criterion_neumann() {
  CriterionResult r{7, "Neumann boundary expansion and manufactured convergence"};
  bool pass = true;
  std::ostringstream os;
  for (double s : {0.5, 0.75}) {
    const double beta1 = critical_exponents(s, 1).beta[1];
    const auto ustar = SampledFunction::cosine_pi();
    auto fstar = [&](double x) {
      x = std::clamp(x, 1e-9, 1.0 - 1e-9);
      return eval_pv(ustar, x, s);
    };
    double prev_a0 = 0.0, prev_err = 0.0;
    bool first = true;
    for (int n : {128, 256, 512}) {
      const GradedMesh mesh = graded_mesh_both(n, 2.0);
      const GalerkinSystem sys = assemble(mesh, s);

      const Solution manu = solve_neumann(fstar, mesh, s, &sys);
      double err = 0.0;
      for (int i = 0; i <= n; ++i)
        err = std::max(err, std::abs(manu.u[i] -
                                     std::cos(std::numbers::pi * mesh.nodes[i])));

      const Solution sol = solve_neumann(
          [](double x) { return std::cos(std::numbers::pi * x); }, mesh, s, &sys);
      // window tied to the mesh (first ~16 graded nodes) so the fit-model
      // error shrinks with n rather than saturating.
      const double w = std::min(0.2, mesh.nodes[16] * 1.001);
      const BoundaryExpansion fit = fit_boundary_expansion(sol, s, beta1, w);

      if (!first) {
        check(err < prev_err, os, pass,
              "manufactured error not decreasing at s=" + std::to_string(s) +
                  ", n=" + std::to_string(n));
        if (!fit.a0_indeterminate)
          check(std::abs(fit.a0) <= std::abs(prev_a0) / 1.8, os, pass,
                "a0 decay < 1.8x at s=" + std::to_string(s) + ", n=" + std::to_string(n));
      }
      prev_a0 = fit.a0;
      prev_err = err;
      first = false;
    }
  }
  r.pass = pass;
  r.detail = pass ? "a0 shrinks >= 1.8x per doubling (a0 indeterminate at s=1/2); "
                    "manufactured error monotone"
                  : os.str();
  return r;
}

// --- criterion 8: Dirichlet structure ----------------------------------------

inline CriterionResult criterion_dirichlet() {
  CriterionResult r{8, "Dirichlet c0 and boundary quotient stability"};
  bool pass = true;
  std::ostringstream os;
  const double s = 0.75;
  const double beta1 = critical_exponents(s, 1).beta[1];
  auto one = [](double) { return 1.0; };
  double q256 = 0.0;
  for (int n : {256, 512}) {
    const GradedMesh mesh = graded_mesh_both(n, 3.0);
    const Solution sol = solve_dirichlet(one, mesh, s);
    const double q = sol.u[1] * std::pow(mesh.nodes[1], 1.0 - 2.0 * s);
    if (n == 256) {
      q256 = q;
    } else {
      const BoundaryExpansion fit = fit_boundary_expansion(sol, s, beta1, 0.1);
      check(std::abs(fit.c0) < 1e-3, os, pass,
            "c0=" + std::to_string(fit.c0) + " at n=512");
      check(std::abs(q - q256) < 0.05 * std::abs(q256), os, pass,
            "boundary quotient drift > 5%");
      bool positive = true;
      for (int i = 1; i < n; ++i)
        if (sol.u[i] <= 0.0) positive = false;
      check(positive, os, pass, "interior positivity violated");
    }
  }
  r.pass = pass;
  r.detail = pass ? "c0 < 1e-3 at n=512; quotient drift < 5%; u > 0 inside" : os.str();
  return r;
}

// --- criterion 9: boundary Hoelder exponent ----------------------------------

inline CriterionResult criterion_holder() {
  CriterionResult r{9, "boundary Hoelder exponent of the Neumann remainder"};
  bool pass = true;
  std::ostringstream os;
  const double s = 0.5;
  const ExponentTable table = critical_exponents(s, 1);
  const double target = 2.0 * s + table.alpha_s;  // = beta_1 = 1.4303
  auto f = [](double x) { return std::cos(std::numbers::pi * x); };
  const GradedMesh m256 = graded_mesh_both(256, 2.0);
  const GradedMesh m512 = graded_mesh_both(512, 2.0);
  const Solution s256 = solve_neumann(f, m256, s);
  const Solution s512 = solve_neumann(f, m512, s);
  double derr = 0.0;
  for (int i = 1; i <= 60; ++i)
    derr = std::max(derr, std::abs(s512.u[i] - s256.eval(m512.nodes[i])));

  const BoundaryExpansion fit = fit_boundary_expansion(s512, s, table.beta[1], 0.05);
  const HolderEstimate est = estimate_boundary_holder(s512, fit, derr);
  check(!est.inconclusive, os, pass, "every window inconclusive");
  int usable = 0;
  for (size_t j = 0; j < est.window_slopes.size(); ++j) {
    if (est.window_inconclusive[j]) continue;
    ++usable;
    check(std::abs(est.window_slopes[j] - target) <= 0.15, os, pass,
          "unflagged window slope " + std::to_string(est.window_slopes[j]) +
              " outside " + std::to_string(target) + " +/- 0.15");
  }
  check(usable >= 1, os, pass, "no usable window");
  r.pass = pass;
  if (pass) {
    std::ostringstream d;
    d << usable << " usable windows; mean slope " << est.slope << " vs " << target;
    r.detail = d.str();
  } else {
    r.detail = os.str();
  }
  return r;
}

// --- criterion 10: disk mean-curvature identity -------------------------------

// The Galerkin-extracted boundary ratio psi'(1)/psi(1) is checked against a
// second, fully independent prediction: the log-cancellation constant g1/g2
// from pointwise operator asymptotics (see boundary_log_ratio). Both methods
// agree on -1/2 for the unit disk, which is where the curvature enters: the
// same extraction applied to the 1D interval (zero curvature) yields 0.
inline CriterionResult criterion_curvature() {
  CriterionResult r{10, "disk boundary ratio psi'(1)/psi(1) vs log-cancellation"};
  bool pass = true;
  std::ostringstream os, dt;
  auto one = [](double) { return 1.0; };
  for (double s : {0.75, 0.9}) {
    const BoundaryLogReport oracle = boundary_log_ratio(s);
    const double kappa_flat = std::sqrt(std::numbers::pi) *
                              std::exp(std::lgamma(s + 0.5) - std::lgamma(1.0 + s));
    check(std::abs(oracle.g2 - kappa_flat) < 0.01 * kappa_flat, os, pass,
          "far-field log coefficient g2 off its closed form at s=" +
              std::to_string(s));
    const double alpha_s = alpha_critical(s);
    double err128 = 0.0, err512 = 0.0, ratio256 = 0.0, ratio512 = 0.0;
    for (int n : {128, 256, 512}) {
      const GradedMesh mesh = graded_mesh_right(n, 3.0);
      const RadialSolution sol = solve_disk_dirichlet(one, mesh, s);
      const CurvatureReport rep = check_curvature_identity(sol, alpha_s);
      check(!rep.inconclusive, os, pass,
            "inconclusive at s=" + std::to_string(s) + ", n=" + std::to_string(n));
      if (n == 128) err128 = std::abs(rep.ratio - oracle.ratio);
      if (n == 256) ratio256 = rep.ratio;
      if (n == 512) {
        ratio512 = rep.ratio;
        err512 = std::abs(rep.ratio - oracle.ratio);
      }
    }
    const double richardson = 2.0 * ratio512 - ratio256;
    check(std::abs(richardson - oracle.ratio) <= 0.1, os, pass,
          "Richardson ratio " + std::to_string(richardson) +
              " not within 0.1 of log-cancellation value " +
              std::to_string(oracle.ratio) + " at s=" + std::to_string(s));
    check(err512 < err128, os, pass,
          "error vs oracle not shrinking 128->512 at s=" + std::to_string(s));
    dt << "s=" << s << ": " << richardson << " vs " << oracle.ratio << "; ";
  }
  r.pass = pass;
  r.detail = pass ? dt.str() : os.str();
  return r;
}

}  // namespace selftest

/// Run the acceptance criteria; quick = analytic tiers only (1-4, 6).
inline std::vector<CriterionResult> run_acceptance(bool quick) {
  using Fn = CriterionResult (*)();
  const std::vector<std::pair<Fn, bool>> all = {
      {selftest::criterion_exponents_half, true},
      {selftest::criterion_exponent_sweep, true},
      {selftest::criterion_kernel_identities, true},
      {selftest::criterion_pv_vs_closed_form, true},
      {selftest::criterion_angular, false},
      {selftest::criterion_boundary_formula, true},
      {selftest::criterion_neumann, false},
      {selftest::criterion_dirichlet, false},
      {selftest::criterion_holder, false},
      {selftest::criterion_curvature, false},
  };
  std::vector<CriterionResult> results;
  for (const auto& [fn, in_quick] : all) {
    if (quick && !in_quick) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res = fn();
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    results.push_back(std::move(res));
  }
  return results;
}

inline int report_acceptance(const std::vector<CriterionResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    std::printf("criterion %2d [%s] %-55s %7.1fs  %s\n", r.id,
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                r.detail.c_str());
    if (!r.pass) ++failures;
  }
  return failures;
}

}  // namespace regional
