// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#ifndef METRIPLECTIC_TYPES_HPP
#define METRIPLECTIC_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace metriplectic {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Invalid configuration: dimension mismatches, malformed scenario files,
/// structure constants violating their axioms, nonpositive inertia, etc.
/// The CLI maps this to exit code 3.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what_arg)
      : std::runtime_error(what_arg) {}
};

/// The implicit step solver did not reach the requested residual within its
/// iteration budget. Carries the last residual as a diagnostic. The CLI maps
/// this to exit code 2.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what_arg, double last_residual,
                int iterations_used)
      : std::runtime_error(what_arg),
        residual(last_residual),
        iterations(iterations_used) {}

  double residual;
  int iterations;
};

bool all_finite(const Vec& v);
void require_finite(const Vec& v, const char* context);
void require_dim(const Vec& v, Index n, const char* context);

/// Componentwise-uniform pseudo-random states on [lo, hi]^dim, reproducible
/// from the seed.
std::vector<Vec> sample_states(Index dim, int count, std::uint64_t seed,
                               double lo = -2.0, double hi = 2.0);

}  // namespace metriplectic

#endif  // METRIPLECTIC_TYPES_HPP
