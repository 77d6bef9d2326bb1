// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#ifndef METRIPLECTIC_TRAJECTORY_IO_HPP
#define METRIPLECTIC_TRAJECTORY_IO_HPP

#include <iosfwd>
#include <string>

#include "metriplectic/integrator.hpp"

namespace metriplectic {

/// 17-significant-digit decimal rendering; round-trips any double exactly.
std::string format_full(double v);

/// CSV columns: step, t, x_1..x_n, H, S, dS, solver_iters, residual.
/// A truncated trajectory gains a trailing "# truncated: ..." comment line.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Inverse of write_trajectory_csv. Throws ConfigError on malformed input.
Trajectory read_trajectory_csv(std::istream& in, const std::string& origin);
Trajectory read_trajectory_csv(const std::string& path);

}  // namespace metriplectic

#endif  // METRIPLECTIC_TRAJECTORY_IO_HPP
