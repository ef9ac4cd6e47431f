// Command-line front end for the regional fractional Laplacian laboratory.
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "regional/angular.hpp"
#include "regional/disk.hpp"
#include "regional/exponents.hpp"
#include "regional/io.hpp"
#include "regional/operator_1d.hpp"
#include "regional/selftest.hpp"
#include "regional/solver_1d.hpp"
#include "regional/special.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

std::string resolve_output(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("REGIONAL_LAB_OUTDIR");
  if (dir && *dir) return std::string(dir) + "/" + path;
  return path;
}

void emit(const json& doc, const std::string& output) {
  const std::string text = doc.dump(2) + "\n";
  if (output.empty())
    std::cout << text;
  else
    regional::write_text(resolve_output(output), text);
}

void emit_csv(const std::string& text, const std::string& output) {
  if (output.empty())
    std::cout << text;
  else
    regional::write_text(resolve_output(output), text);
}

std::function<double(double)> named_f(const std::string& name) {
  if (name == "const1") return [](double) { return 1.0; };
  if (name == "cospix")
    return [](double x) { return std::cos(std::numbers::pi * x); };
  if (name.rfind("custom:", 0) == 0) {
    const std::string path = name.substr(7);
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--f", "cannot open " + path);
    auto xs = std::make_shared<std::vector<double>>();
    auto ys = std::make_shared<std::vector<double>>();
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") ==
                                                std::string::npos)
        continue;
      std::istringstream ls(line);
      double x, y;
      char comma;
      if (ls >> x >> comma >> y) {
        xs->push_back(x);
        ys->push_back(y);
      }
    }
    if (xs->size() < 2)
      throw CLI::ValidationError("--f", "need >= 2 nodal rows in " + path);
    return [xs, ys](double x) {
      const auto it = std::upper_bound(xs->begin(), xs->end(), x);
      if (it == xs->begin()) return ys->front();
      if (it == xs->end()) return ys->back();
      const size_t j = it - xs->begin();
      const double t = (x - (*xs)[j - 1]) / ((*xs)[j] - (*xs)[j - 1]);
      return (1.0 - t) * (*ys)[j - 1] + t * (*ys)[j];
    };
  }
  throw CLI::ValidationError("--f", "unknown function name: " + name);
}

std::string solution_csv(const regional::Solution& sol) {
  std::ostringstream os;
  os.precision(15);
  os << "x,u,quotient\n";
  for (Eigen::Index i = 0; i < sol.mesh.nodes.size(); ++i) {
    const double x = sol.mesh.nodes[i];
    const double d = std::min(x, 1.0 - x);
    os << x << "," << sol.u[i] << ",";
    if (d > 0.0)
      os << sol.u[i] * std::pow(d, 1.0 - 2.0 * sol.s);
    os << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the regional fractional Laplacian"};
  app.require_subcommand(1);

  std::string output;
  app.add_option("--output", output, "output file (default: stdout)")->capture_default_str();

  // exponents
  auto* c_exp = app.add_subcommand("exponents", "critical homogeneity exponents beta_k");
  double exp_s = 0.5;
  int exp_k = 3;
  std::string sweep;
  c_exp->add_option("--s", exp_s, "fractional order in (0,1)")->required();
  c_exp->add_option("--k", exp_k, "number of roots beyond beta_0");
  c_exp->add_option("--sweep", sweep, "lo:hi:step sweep over s (overrides --s)");

  // coeff
  auto* c_coeff = app.add_subcommand("coeff", "regional power coefficient C_reg(beta)");
  double co_beta = 1.0, co_s = 0.75;
  c_coeff->add_option("--beta", co_beta)->required();
  c_coeff->add_option("--s", co_s)->required();

  // eigen
  auto* c_eigen = app.add_subcommand("eigen", "angular eigenproblem");
  double ei_s = 0.5, ei_mu = 2.0;
  int ei_modes = 4, ei_n = 256;
  std::string ei_csv;
  c_eigen->add_option("--s", ei_s)->required();
  c_eigen->add_option("--modes", ei_modes);
  c_eigen->add_option("--n", ei_n);
  c_eigen->add_option("--mu", ei_mu);
  c_eigen->add_option("--csv", ei_csv, "also dump nodal eigenfunctions as CSV");

  // verify-power
  auto* c_vp = app.add_subcommand("verify-power", "p.v. quadrature vs closed form");
  double vp_s = 0.6, vp_beta = 1.0, vp_x = 1.0;
  c_vp->add_option("--s", vp_s)->required();
  c_vp->add_option("--beta", vp_beta)->required();
  c_vp->add_option("--x", vp_x);

  // solve1d
  auto* c_s1 = app.add_subcommand("solve1d", "Galerkin solve on (0,1)");
  std::string s1_bc = "neumann", s1_f = "cospix", s1_csv;
  double s1_s = 0.5, s1_mu = 0.0, s1_window = 0.1;
  int s1_n = 256;
  c_s1->add_option("--bc", s1_bc)->check(CLI::IsMember({"neumann", "dirichlet"}));
  c_s1->add_option("--s", s1_s)->required();
  c_s1->add_option("--f", s1_f, "const1 | cospix | custom:file.csv");
  c_s1->add_option("--n", s1_n);
  c_s1->add_option("--mu", s1_mu, "grading exponent (default 2 Neumann, 3 Dirichlet)");
  c_s1->add_option("--window", s1_window, "boundary-fit window");
  c_s1->add_option("--csv", s1_csv, "also dump (x, u, u/delta^{2s-1}) CSV");

  // fit
  auto* c_fit = app.add_subcommand("fit", "boundary expansion fit of a solution CSV");
  std::string fit_input;
  double fit_s = 0.5, fit_window = 0.1;
  c_fit->add_option("--input", fit_input)->required()->check(CLI::ExistingFile);
  c_fit->add_option("--s", fit_s)->required();
  c_fit->add_option("--window", fit_window);

  // disk
  auto* c_disk = app.add_subcommand("disk", "radial Dirichlet solve on the unit disk");
  double dk_s = 0.75, dk_mu = 3.0;
  int dk_n = 256;
  std::string dk_csv;
  c_disk->add_option("--s", dk_s)->required();
  c_disk->add_option("--n", dk_n);
  c_disk->add_option("--mu", dk_mu);
  c_disk->add_option("--csv", dk_csv, "also dump (r, u, psi) CSV");

  // selftest
  auto* c_self = app.add_subcommand("selftest", "acceptance suite");
  bool quick = false, full = false;
  c_self->add_flag("--quick", quick, "analytic identities only (seconds)");
  c_self->add_flag("--full", full, "refinement studies included (minutes)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_exp) {
      json payload;
      json config{{"subcommand", "exponents"}, {"k", exp_k}};
      if (!sweep.empty()) {
        double lo, hi, step;
        char c1, c2;
        std::istringstream ss(sweep);
        if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' ||
            step <= 0.0) {
          std::cerr << "bad --sweep format, expected lo:hi:step\n";
          return kExitValidation;
        }
        config["sweep"] = sweep;
        json rows = json::array();
        for (double s = lo; s <= hi + 1e-12; s += step) {
          const auto t = regional::critical_exponents(s, exp_k);
          rows.push_back({{"s", s},
                          {"beta", t.beta},
                          {"alpha_s", t.alpha_s},
                          {"diagnostics", t.diagnostics}});
        }
        payload["table"] = rows;
      } else {
        config["s"] = exp_s;
        const auto t = regional::critical_exponents(exp_s, exp_k);
        json res = json::array(), brackets = json::array();
        for (size_t i = 0; i < t.residuals.size(); ++i) {
          res.push_back({{"h_gap", t.residuals[i].g}, {"creg", t.residuals[i].creg}});
          brackets.push_back({t.brackets[i].first, t.brackets[i].second});
        }
        payload = {{"beta", t.beta},
                   {"alpha_s", t.alpha_s},
                   {"residuals", res},
                   {"brackets", brackets},
                   {"diagnostics", t.diagnostics}};
      }
      emit(regional::make_document(config, payload), output);
    } else if (*c_coeff) {
      const double v = regional::regional_power_coeff(co_beta, co_s);
      emit(regional::make_document(
               {{"subcommand", "coeff"}, {"beta", co_beta}, {"s", co_s}},
               {{"c_reg", v},
                {"c_full", regional::full_power_coeff(co_beta, co_s)},
                {"a_s", regional::hardy_coefficient(co_s)}}),
           output);
    } else if (*c_eigen) {
      if (ei_modes < 1 || ei_n < 8) {
        std::cerr << "eigen: need --modes >= 1 and --n >= 8\n";
        return kExitValidation;
      }
      const auto pairs = regional::angular_spectrum(ei_s, ei_n, ei_modes, ei_mu);
      json lam = json::array(), bet = json::array();
      for (const auto& p : pairs) {
        lam.push_back(p.lambda);
        bet.push_back(regional::beta_from_lambda(p.lambda, ei_s));
      }
      emit(regional::make_document({{"subcommand", "eigen"},
                                    {"s", ei_s},
                                    {"n", ei_n},
                                    {"mu", ei_mu},
                                    {"modes", ei_modes}},
                                   {{"lambda", lam}, {"beta", bet}}),
           output);
      if (!ei_csv.empty()) {
        const auto mesh = regional::angular_mesh(ei_n, ei_mu);
        std::ostringstream os;
        os.precision(15);
        os << "theta";
        for (const auto& p : pairs) os << ",psi_" << p.k;
        os << "\n";
        for (Eigen::Index i = 0; i < mesh.nodes.size(); ++i) {
          os << mesh.nodes[i];
          for (const auto& p : pairs) os << "," << p.psi_values[i];
          os << "\n";
        }
        emit_csv(os.str(), ei_csv);
      }
    } else if (*c_vp) {
      const auto u = regional::SampledFunction::power_halfline(vp_beta);
      const double pv = regional::eval_pv(u, vp_x, vp_s);
      const double closed = regional::eval_power_halfline(vp_beta, vp_x, vp_s);
      emit(regional::make_document({{"subcommand", "verify-power"},
                                    {"s", vp_s},
                                    {"beta", vp_beta},
                                    {"x", vp_x}},
                                   {{"pv", pv},
                                    {"closed_form", closed},
                                    {"rel_error",
                                     std::abs(pv - closed) / (1.0 + std::abs(closed))}}),
           output);
    } else if (*c_s1) {
      if (s1_bc == "dirichlet" && !(s1_s > 0.5)) {
        std::cerr << "Dirichlet requires s > 1/2\n";
        return kExitValidation;
      }
      const double mu = s1_mu > 0.0 ? s1_mu : (s1_bc == "dirichlet" ? 3.0 : 2.0);
      const auto mesh = regional::graded_mesh_both(s1_n, mu);
      const auto f = named_f(s1_f);
      const regional::Solution sol = s1_bc == "dirichlet"
                                         ? regional::solve_dirichlet(f, mesh, s1_s)
                                         : regional::solve_neumann(f, mesh, s1_s);
      const auto table = regional::critical_exponents(s1_s, 1);
      const auto fit =
          regional::fit_boundary_expansion(sol, s1_s, table.beta[1], s1_window);
      emit(regional::make_document({{"subcommand", "solve1d"},
                                    {"bc", s1_bc},
                                    {"s", s1_s},
                                    {"f", s1_f},
                                    {"n", s1_n},
                                    {"mu", mu},
                                    {"window", s1_window}},
                                   {{"c0", fit.c0},
                                    {"a0", fit.a0},
                                    {"a1", fit.a1},
                                    {"beta1", fit.beta1},
                                    {"a0_indeterminate", fit.a0_indeterminate},
                                    {"residual_rms", fit.residual_rms},
                                    {"mean_correction", sol.mean_correction}}),
           output);
      if (!s1_csv.empty()) emit_csv(solution_csv(sol), s1_csv);
    } else if (*c_fit) {
      std::ifstream in(fit_input);
      std::string line;
      std::getline(in, line);  // header
      std::vector<double> xs, us;
      while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string cell;
        if (!std::getline(ls, cell, ',')) continue;
        const double x = std::strtod(cell.c_str(), nullptr);
        if (!std::getline(ls, cell, ',')) continue;
        xs.push_back(x);
        us.push_back(std::strtod(cell.c_str(), nullptr));
      }
      if (xs.size() < 8) {
        std::cerr << "fit: input has fewer than 8 rows\n";
        return kExitValidation;
      }
      regional::Solution sol;
      sol.s = fit_s;
      sol.mesh.nodes = Eigen::Map<Eigen::VectorXd>(xs.data(), xs.size());
      sol.mesh.validate();
      sol.u = Eigen::Map<Eigen::VectorXd>(us.data(), us.size());
      const auto table = regional::critical_exponents(fit_s, 1);
      const auto fit =
          regional::fit_boundary_expansion(sol, fit_s, table.beta[1], fit_window);
      emit(regional::make_document({{"subcommand", "fit"},
                                    {"input", fit_input},
                                    {"s", fit_s},
                                    {"window", fit_window}},
                                   {{"c0", fit.c0},
                                    {"a0", fit.a0},
                                    {"a1", fit.a1},
                                    {"beta1", fit.beta1},
                                    {"a0_indeterminate", fit.a0_indeterminate},
                                    {"residual_rms", fit.residual_rms},
                                    {"condition", fit.condition}}),
           output);
    } else if (*c_disk) {
      if (!(dk_s > 0.5)) {
        std::cerr << "Dirichlet requires s > 1/2\n";
        return kExitValidation;
      }
      const auto mesh = regional::graded_mesh_right(dk_n, dk_mu);
      const auto sol =
          regional::solve_disk_dirichlet([](double) { return 1.0; }, mesh, dk_s);
      const double alpha_s = regional::alpha_critical(dk_s);
      const auto rep = regional::check_curvature_identity(sol, alpha_s);
      const auto oracle = regional::boundary_log_ratio(dk_s);
      emit(regional::make_document(
               {{"subcommand", "disk"}, {"s", dk_s}, {"n", dk_n}, {"mu", dk_mu}},
               {{"psi1", rep.psi1},
                {"dpsi1", rep.dpsi1},
                {"ratio", rep.ratio},
                {"dispersion", rep.dispersion},
                {"inconclusive", rep.inconclusive},
                {"log_cancellation",
                 {{"g1", oracle.g1}, {"g2", oracle.g2}, {"ratio", oracle.ratio}}}}),
           output);
      if (!dk_csv.empty()) {
        std::ostringstream os;
        os.precision(15);
        os << "r,u,psi\n";
        for (Eigen::Index i = 0; i < sol.mesh.nodes.size() - 1; ++i)
          os << sol.mesh.nodes[i] << "," << sol.u[i] << ","
             << sol.psi(static_cast<int>(i)) << "\n";
        emit_csv(os.str(), dk_csv);
      }
    } else if (*c_self) {
      const auto results = regional::run_acceptance(quick && !full);
      const int failures = regional::report_acceptance(results);
      return failures == 0 ? kExitOk : kExitNumerical;
    }
  } catch (const regional::PoleError& e) {
    std::cerr << "validation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "validation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
