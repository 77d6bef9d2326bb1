// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#ifndef METRIPLECTIC_AUDIT_HPP
#define METRIPLECTIC_AUDIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "metriplectic/brackets.hpp"
#include "metriplectic/integrator.hpp"
#include "metriplectic/lie_algebra.hpp"
#include "metriplectic/types.hpp"

namespace metriplectic {

struct AuditCheck {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool pass = true;
  Vec worst_state;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  std::uint64_t seed = 0;

  bool overall() const;
  const AuditCheck* find(const std::string& name) const;
};

struct AuditThresholds {
  /// max_k |H_k - H_0| / (1 + |H_0|)
  double energy_drift = 1e-10;
  /// allowed negative per-step entropy increment, relative to 1 + |S_0|
  double entropy_dip = 1e-13;
  /// max_k |J_k - J_0| / (1 + |J_0|) for extra invariants
  double invariant_drift = 1e-10;
  /// per-step |dS/h - (S,S)(z)| <= rate_rel |(S,S)(z)| + rate_abs
  double rate_rel = 0.05;
  double rate_abs = 1e-12;
  /// forced Lie-Poisson vs metriplectic right-hand sides, relative
  double cross_validation = 1e-12;
};

/// Energy drift, per-step entropy monotonicity and drift of user-supplied
/// conserved quantities over a trajectory. Pure function of its inputs.
AuditReport audit_trajectory(const Trajectory& traj,
                             const MetriplecticSystem& system,
                             const std::vector<ScalarField>& extra_invariants
                             = {},
                             const AuditThresholds& thresholds = {});

/// Compares each per-step dS/h against the symmetric-bracket rate
/// (S, S)(z_k) at the step midpoint and re-checks the entropy sign.
AuditReport entropy_rate_check(const Trajectory& traj,
                               const MetriplecticSystem& system,
                               const AuditThresholds& thresholds = {});

/// Evaluates the same dynamics both ways at seeded random states: the
/// forced Lie-Poisson right-hand side with the Casimir-derived force
/// (inner product kg, Casimir |mu|^2/2) against Pi grad H + K grad S with
/// K from the Euclidean-metric construction. H is the kinetic energy of the
/// given diagonal inertia. Reports the worst relative discrepancy.
AuditReport cross_validate_formulations(const StructureConstants& sc,
                                        const Vec& inertia,
                                        const AlgebraInnerProduct& kg,
                                        int n_samples, std::uint64_t seed,
                                        const AuditThresholds& thresholds
                                        = {});

/// Stable-key-order JSON rendering of a report.
std::string audit_report_to_json(const AuditReport& report);

}  // namespace metriplectic

#endif  // METRIPLECTIC_AUDIT_HPP
