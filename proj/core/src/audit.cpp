// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#include "metriplectic/audit.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "json.hpp"

namespace metriplectic {

bool AuditReport::overall() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AuditCheck& c) { return c.pass; });
}

const AuditCheck* AuditReport::find(const std::string& name) const {
  for (const AuditCheck& c : checks) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

namespace {

AuditCheck make_check(std::string name, double residual, double threshold,
                      Vec worst) {
  AuditCheck c;
  c.name = std::move(name);
  c.max_residual = residual;
  c.threshold = threshold;
  c.pass = residual <= threshold;
  c.worst_state = std::move(worst);
  return c;
}

}  // namespace

AuditReport audit_trajectory(const Trajectory& traj,
                             const MetriplecticSystem& system,
                             const std::vector<ScalarField>& extra_invariants,
                             const AuditThresholds& thresholds) {
  if (traj.records.empty()) {
    throw ConfigError("audit_trajectory: empty trajectory");
  }
  AuditReport report;

  const double h0 = traj.records.front().energy;
  const double s0 = traj.records.front().entropy;
  const double energy_scale = 1.0 + std::abs(h0);
  const double entropy_scale = 1.0 + std::abs(s0);

  double energy_worst = 0.0;
  Vec energy_state = traj.records.front().state;
  double dip_worst = 0.0;
  Vec dip_state = traj.records.front().state;
  for (std::size_t k = 1; k < traj.records.size(); ++k) {
    const StepRecord& r = traj.records[k];
    const double drift = std::abs(r.energy - h0) / energy_scale;
    if (drift >= energy_worst) {
      energy_worst = drift;
      energy_state = r.state;
    }
    const double dip = std::max(0.0, -r.delta_entropy) / entropy_scale;
    if (dip >= dip_worst) {
      dip_worst = dip;
      dip_state = r.state;
    }
  }
  report.checks.push_back(make_check("energy-drift", energy_worst,
                                     thresholds.energy_drift,
                                     std::move(energy_state)));
  report.checks.push_back(make_check("entropy-monotonicity", dip_worst,
                                     thresholds.entropy_dip,
                                     std::move(dip_state)));

  for (std::size_t j = 0; j < extra_invariants.size(); ++j) {
    const ScalarField& inv = extra_invariants[j];
    const double j0 = inv.value(traj.records.front().state);
    const double scale = 1.0 + std::abs(j0);
    double worst = 0.0;
    Vec state = traj.records.front().state;
    for (std::size_t k = 1; k < traj.records.size(); ++k) {
      const double drift =
          std::abs(inv.value(traj.records[k].state) - j0) / scale;
      if (drift >= worst) {
        worst = drift;
        state = traj.records[k].state;
      }
    }
    report.checks.push_back(make_check("invariant-" + std::to_string(j + 1),
                                       worst, thresholds.invariant_drift,
                                       std::move(state)));
  }
  return report;
}

AuditReport entropy_rate_check(const Trajectory& traj,
                               const MetriplecticSystem& system,
                               const AuditThresholds& thresholds) {
  if (traj.records.empty()) {
    throw ConfigError("entropy_rate_check: empty trajectory");
  }
  const double h = traj.config.step_h;
  const double s0 = traj.records.front().entropy;
  const double entropy_scale = 1.0 + std::abs(s0);

  // Deviation of dS/h from the bracket rate (S,S)(z), normalized by the
  // per-step allowance rate_rel |rate| + rate_abs; passing means <= 1.
  double rate_worst = 0.0;
  Vec rate_state = traj.records.front().state;
  double dip_worst = 0.0;
  Vec dip_state = traj.records.front().state;
  for (std::size_t k = 1; k < traj.records.size(); ++k) {
    const Vec z =
        0.5 * (traj.records[k - 1].state + traj.records[k].state);
    const double rate = evaluate_symmetric_bracket(
        system.kappa, system.entropy, system.entropy, z);
    const double deviation =
        std::abs(traj.records[k].delta_entropy / h - rate);
    const double allowance =
        thresholds.rate_rel * std::abs(rate) + thresholds.rate_abs;
    const double normalized = deviation / allowance;
    if (normalized >= rate_worst) {
      rate_worst = normalized;
      rate_state = traj.records[k].state;
    }
    const double dip =
        std::max(0.0, -traj.records[k].delta_entropy) / entropy_scale;
    if (dip >= dip_worst) {
      dip_worst = dip;
      dip_state = traj.records[k].state;
    }
  }
  AuditReport report;
  report.checks.push_back(
      make_check("entropy-rate", rate_worst, 1.0, std::move(rate_state)));
  report.checks.push_back(make_check("entropy-monotonicity", dip_worst,
                                     thresholds.entropy_dip,
                                     std::move(dip_state)));
  return report;
}

AuditReport cross_validate_formulations(const StructureConstants& sc,
                                        const Vec& inertia,
                                        const AlgebraInnerProduct& kg,
                                        int n_samples, std::uint64_t seed,
                                        const AuditThresholds& thresholds) {
  if (n_samples < 1) {
    throw ConfigError("cross_validate_formulations: n_samples must be "
                      "positive");
  }
  require_dim(inertia, sc.dim(), "cross_validate_formulations");
  const ScalarField h = rigid_body_energy(inertia);
  const ScalarField s = ScalarField::half_norm_squared();
  const ForceMap force = force_from_casimir(sc, kg, s);
  const TensorField pi = lie_poisson_tensor(sc);
  const TensorField kappa =
      build_psd_from_metric(MetricField::euclidean(sc.dim()), h);

  AuditReport report;
  report.seed = seed;
  double worst = 0.0;
  Vec worst_state = Vec::Zero(sc.dim());
  for (const Vec& mu : sample_states(sc.dim(), n_samples, seed)) {
    const Vec forced = forced_lie_poisson_rhs(sc, h, force, mu);
    const Vec metriplectic =
        pi.eval(mu) * h.gradient(mu) + kappa.eval(mu) * s.gradient(mu);
    const double scale =
        1.0 + std::max(forced.lpNorm<Eigen::Infinity>(),
                       metriplectic.lpNorm<Eigen::Infinity>());
    const double rel =
        (forced - metriplectic).lpNorm<Eigen::Infinity>() / scale;
    if (rel >= worst) {
      worst = rel;
      worst_state = mu;
    }
  }
  report.checks.push_back(make_check("formulation-equivalence", worst,
                                     thresholds.cross_validation,
                                     std::move(worst_state)));
  return report;
}

std::string audit_report_to_json(const AuditReport& report) {
  nlohmann::ordered_json doc;
  doc["seed"] = report.seed;
  doc["overall"] = report.overall();
  doc["checks"] = nlohmann::ordered_json::array();
  for (const AuditCheck& c : report.checks) {
    nlohmann::ordered_json entry;
    entry["name"] = c.name;
    entry["max_residual"] = c.max_residual;
    entry["threshold"] = c.threshold;
    entry["pass"] = c.pass;
    auto state = nlohmann::ordered_json::array();
    for (Index i = 0; i < c.worst_state.size(); ++i) {
      state.push_back(c.worst_state[i]);
    }
    entry["worst_state"] = std::move(state);
    doc["checks"].push_back(std::move(entry));
  }
  return doc.dump(2);
}

}  // namespace metriplectic
