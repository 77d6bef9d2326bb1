// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

// Command-line front end. Exit codes: 0 success, 1 audit failure, 2 solver
// failure, 3 configuration or parse error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "metriplectic/audit.hpp"
#include "metriplectic/integrator.hpp"
#include "metriplectic/lie_algebra.hpp"
#include "metriplectic/scenario.hpp"
#include "metriplectic/trajectory_io.hpp"

namespace {

using metriplectic::AuditReport;
using metriplectic::ConfigError;
using metriplectic::Scenario;
using metriplectic::Trajectory;

constexpr int kExitOk = 0;
constexpr int kExitAuditFailure = 1;
constexpr int kExitSolverFailure = 2;
constexpr int kExitConfigError = 3;

Trajectory run_scenario(const Scenario& scenario,
                        const std::string& integrator, long n_steps) {
  if (integrator == "rk4") {
    return metriplectic::integrate_rk4(scenario.system,
                                       scenario.config.step_h,
                                       scenario.initial_state, n_steps);
  }
  return metriplectic::integrate(scenario.system, scenario.config,
                                 scenario.initial_state, n_steps);
}

int run_command(const std::string& scenario_path, const std::string& out_path,
                const std::string& integrator, long steps_override) {
  Scenario scenario = metriplectic::load_scenario(scenario_path);
  const long n_steps =
      steps_override >= 0 ? steps_override : scenario.n_steps;
  Trajectory traj = run_scenario(scenario, integrator, n_steps);
  traj.scenario_id = scenario.name;
  metriplectic::write_trajectory_csv(traj, out_path);
  std::cout << "wrote " << out_path << ": " << traj.records.size()
            << " records (" << integrator << ", h = "
            << scenario.config.step_h << ")\n";
  if (traj.truncated) {
    std::cerr << "solver failure: " << traj.failure << '\n';
    return kExitSolverFailure;
  }
  return kExitOk;
}

void merge_checks(AuditReport& into, const AuditReport& from) {
  for (const auto& check : from.checks) {
    if (into.find(check.name) == nullptr) {
      into.checks.push_back(check);
    }
  }
}

int check_command(const std::string& scenario_path,
                  const std::string& traj_path) {
  Scenario scenario = metriplectic::load_scenario(scenario_path);
  Trajectory traj;
  if (!traj_path.empty()) {
    traj = metriplectic::read_trajectory_csv(traj_path);
  } else {
    traj = run_scenario(scenario, "metriplectic", scenario.n_steps);
    if (traj.truncated) {
      std::cerr << "solver failure: " << traj.failure << '\n';
      return kExitSolverFailure;
    }
  }

  AuditReport report =
      metriplectic::audit_trajectory(traj, scenario.system);
  report.seed = scenario.seed;
  merge_checks(report,
               metriplectic::entropy_rate_check(traj, scenario.system));
  if (scenario.is_rigid_body) {
    merge_checks(report, metriplectic::cross_validate_formulations(
                             metriplectic::StructureConstants::so3(),
                             scenario.inertia,
                             metriplectic::AlgebraInnerProduct::identity(3),
                             100, scenario.seed));
  }
  std::cout << metriplectic::audit_report_to_json(report) << '\n';
  return report.overall() ? kExitOk : kExitAuditFailure;
}

std::vector<double> parse_h_list(const std::string& text) {
  std::vector<double> h_list;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t consumed = 0;
      const double h = std::stod(item, &consumed);
      if (consumed != item.size()) {
        throw std::invalid_argument(item);
      }
      h_list.push_back(h);
    } catch (const std::exception&) {
      throw ConfigError("--h-list: not a number: '" + item + "'");
    }
  }
  return h_list;
}

int converge_command(const std::string& scenario_path,
                     const std::string& h_list_text, double t_final,
                     const std::string& integrator) {
  Scenario scenario = metriplectic::load_scenario(scenario_path);
  const auto kind = integrator == "rk4"
                        ? metriplectic::IntegratorKind::Rk4
                        : metriplectic::IntegratorKind::Metriplectic;
  const metriplectic::ConvergenceReport report =
      metriplectic::convergence_study(scenario.system, scenario.config,
                                      scenario.initial_state, t_final,
                                      parse_h_list(h_list_text), kind);
  nlohmann::ordered_json doc;
  doc["scenario"] = scenario.name;
  doc["integrator"] = integrator;
  doc["t_final"] = t_final;
  doc["h_values"] = report.h_values;
  doc["errors"] = report.errors;
  doc["slope"] = report.slope;
  doc["inconclusive"] = report.inconclusive;
  std::cout << doc.dump(2) << '\n';
  return kExitOk;
}

metriplectic::DiscreteGradientScheme scheme_by_name(const std::string& name) {
  if (name == "midpoint") {
    return metriplectic::DiscreteGradientScheme::midpoint();
  }
  if (name == "mean_value") {
    return metriplectic::DiscreteGradientScheme::mean_value();
  }
  if (name == "coordinate_increment") {
    return metriplectic::DiscreteGradientScheme::coordinate_increment();
  }
  throw ConfigError("unknown scheme '" + name + "'");
}

int sweep_command(const std::string& scenario_path,
                  const std::string& grid_path) {
  Scenario scenario = metriplectic::load_scenario(scenario_path);
  std::ifstream in(grid_path);
  if (!in) {
    throw ConfigError("sweep: cannot open " + grid_path);
  }
  nlohmann::json grid;
  try {
    grid = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(grid_path + ": parse error: " + e.what());
  }

  std::vector<double> h_values{scenario.config.step_h};
  std::vector<std::string> schemes{"midpoint"};
  std::vector<std::string> variants{"unscaled"};
  try {
    if (grid.contains("step_h")) {
      h_values = grid.at("step_h").get<std::vector<double>>();
    }
    if (grid.contains("scheme")) {
      schemes = grid.at("scheme").get<std::vector<std::string>>();
    }
    if (grid.contains("kd_variant")) {
      variants = grid.at("kd_variant").get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(grid_path + ": invalid grid: " + e.what());
  }
  if (h_values.empty() || schemes.empty() || variants.empty()) {
    throw ConfigError(grid_path + ": grid axes must be nonempty");
  }

  const double t_span =
      static_cast<double>(scenario.n_steps) * scenario.config.step_h;
  nlohmann::ordered_json doc;
  doc["scenario"] = scenario.name;
  doc["t_span"] = t_span;
  doc["cells"] = nlohmann::ordered_json::array();
  for (double h : h_values) {
    if (!(h > 0.0)) {
      throw ConfigError(grid_path + ": step_h entries must be positive");
    }
    for (const std::string& scheme_name : schemes) {
      for (const std::string& variant_name : variants) {
        metriplectic::IntegratorConfig config = scenario.config;
        config.step_h = h;
        config.scheme = scheme_by_name(scheme_name);
        if (variant_name == "unscaled") {
          config.kd_variant = metriplectic::KdVariant::Unscaled;
        } else if (variant_name == "scaled") {
          config.kd_variant = metriplectic::KdVariant::Scaled;
        } else {
          throw ConfigError(grid_path + ": unknown kd_variant '" +
                            variant_name + "'");
        }
        const long n_steps =
            std::max(1L, std::lround(t_span / h));
        const Trajectory traj =
            metriplectic::integrate(scenario.system, config,
                                    scenario.initial_state, n_steps);
        nlohmann::ordered_json cell;
        cell["step_h"] = h;
        cell["scheme"] = scheme_name;
        cell["kd_variant"] = variant_name;
        cell["completed"] = !traj.truncated;
        if (traj.truncated) {
          cell["failure"] = traj.failure;
        } else {
          const AuditReport audit =
              metriplectic::audit_trajectory(traj, scenario.system);
          cell["energy_drift"] =
              audit.find("energy-drift")->max_residual;
          cell["entropy_dip"] =
              audit.find("entropy-monotonicity")->max_residual;
          cell["entropy_gain"] = traj.records.back().entropy -
                                 traj.records.front().entropy;
          cell["pass"] = audit.overall();
        }
        doc["cells"].push_back(std::move(cell));
      }
    }
  }
  std::cout << doc.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-preserving integration toolkit for metriplectic "
               "systems"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string traj_path;
  std::string h_list_text;
  std::string grid_path;
  std::string integrator = "metriplectic";
  double t_final = 10.0;
  long steps_override = -1;

  CLI::App* run = app.add_subcommand(
      "run", "Integrate a scenario and write the trajectory CSV");
  run->add_option("--scenario", scenario_path, "Scenario file (JSON)")
      ->required();
  run->add_option("--out", out_path, "Output trajectory CSV path")
      ->required();
  run->add_option("--integrator", integrator,
                  "Integrator: metriplectic (default) or rk4")
      ->check(CLI::IsMember({"metriplectic", "rk4"}));
  run->add_option("--steps", steps_override,
                  "Override the scenario's n_steps");

  CLI::App* check = app.add_subcommand(
      "check", "Audit a trajectory against the scenario's invariants");
  check->add_option("--scenario", scenario_path, "Scenario file (JSON)")
      ->required();
  check->add_option("--traj", traj_path,
                    "Trajectory CSV to audit (default: integrate afresh)");

  CLI::App* converge = app.add_subcommand(
      "converge", "Estimate the convergence order on a scenario");
  converge->add_option("--scenario", scenario_path, "Scenario file (JSON)")
      ->required();
  converge->add_option("--h-list", h_list_text,
                       "Comma-separated decreasing step sizes")
      ->required();
  converge->add_option("--t-final", t_final,
                       "Horizon for the global error (default 10)");
  converge->add_option("--integrator", integrator,
                       "Integrator: metriplectic (default) or rk4")
      ->check(CLI::IsMember({"metriplectic", "rk4"}));

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run a (step_h, scheme, kd_variant) grid and summarize");
  sweep->add_option("--scenario", scenario_path, "Scenario file (JSON)")
      ->required();
  sweep->add_option("--grid", grid_path, "Grid file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) {
      return run_command(scenario_path, out_path, integrator,
                         steps_override);
    }
    if (check->parsed()) {
      return check_command(scenario_path, traj_path);
    }
    if (converge->parsed()) {
      return converge_command(scenario_path, h_list_text, t_final,
                              integrator);
    }
    if (sweep->parsed()) {
      return sweep_command(scenario_path, grid_path);
    }
  } catch (const metriplectic::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}
