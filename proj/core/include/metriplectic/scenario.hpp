// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#ifndef METRIPLECTIC_SCENARIO_HPP
#define METRIPLECTIC_SCENARIO_HPP

#include <cstdint>
#include <string>

#include "metriplectic/brackets.hpp"
#include "metriplectic/integrator.hpp"

namespace metriplectic {

/// A fully validated experiment description loaded from a JSON scenario
/// file. Loading rebuilds the system and runs the compatibility checks
/// (K grad H = 0, Pi grad S = 0, analytic-gradient consistency) at seeded
/// sample states; a scenario that fails them is a configuration error, not
/// a warning.
struct Scenario {
  std::string name;
  MetriplecticSystem system;
  Vec initial_state;
  IntegratorConfig config;
  long n_steps = 0;
  std::uint64_t seed = 0;

  /// Set for the rigid-body kind; enables the formulation cross-check.
  bool is_rigid_body = false;
  Vec inertia;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin);

}  // namespace metriplectic

#endif  // METRIPLECTIC_SCENARIO_HPP
