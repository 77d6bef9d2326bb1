// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#ifndef METRIPLECTIC_INTEGRATOR_HPP
#define METRIPLECTIC_INTEGRATOR_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "metriplectic/brackets.hpp"
#include "metriplectic/discrete_gradient.hpp"
#include "metriplectic/types.hpp"

namespace metriplectic {

enum class SolverKind { FixedPoint, NewtonFd };

/// Discrete dissipative product variants. Unscaled matches the continuous
/// construction with the discrete gradient in place of grad H; Scaled
/// multiplies it by the extra factor g*(dg, dg). Both share the kernel and
/// PSD properties; only the dissipation rate differs.
enum class KdVariant { Unscaled, Scaled };

struct IntegratorConfig {
  double step_h = 0.1;
  SolverKind solver = SolverKind::FixedPoint;
  /// Residual tolerance on the step equation, relative to 1 + |x|.
  double solver_tol = 1e-13;
  int max_iters = 200;
  KdVariant kd_variant = KdVariant::Unscaled;
  DiscreteGradientScheme scheme;
};

struct StepRecord {
  double t = 0.0;
  Vec state;
  double energy = 0.0;
  double entropy = 0.0;
  double delta_entropy = 0.0;
  int solver_iters = 0;
  double residual = 0.0;
};

struct Trajectory {
  std::vector<StepRecord> records;
  IntegratorConfig config;
  std::string scenario_id;
  bool truncated = false;
  std::string failure;
};

/// K_d = Cbar G^-1(z) - w w' with w = G^-1(z) dg and Cbar = dg' w, where dg
/// is the discrete gradient of H across the step. K_d dg = 0 and K_d is
/// PSD; a vanishing dg yields the zero matrix. The Scaled variant carries
/// the extra factor Cbar.
Mat build_kd(const MetricField& metric, const Vec& dg_value, const Vec& z,
             KdVariant variant);

/// One step of the implicit one-step scheme
///   (x' - x)/h = Pi(z) dg_H(x, x') + K_d(z) grad S(z),   z = (x + x')/2.
/// The returned record has t = 0; integrate() stamps times. Throws
/// SolverFailure if the nonlinear solve does not converge.
std::pair<Vec, StepRecord> metriplectic_step(const MetriplecticSystem& system,
                                             const IntegratorConfig& config,
                                             const Vec& x);

/// Low-level solve with an explicit (possibly negative) step, for adjoint
/// composition checks.
Vec solve_step(const MetriplecticSystem& system, const IntegratorConfig& config,
               const Vec& x, double h, int* iters_out = nullptr,
               double* residual_out = nullptr);

/// n_steps repeated applications of metriplectic_step with per-step energy
/// and entropy bookkeeping. On solver failure the partial trajectory is
/// returned with truncated = true and the diagnostic in failure.
Trajectory integrate(const MetriplecticSystem& system,
                     const IntegratorConfig& config, const Vec& x0,
                     long n_steps);

/// Classical explicit fourth-order one-step method (non-preserving baseline).
Vec rk4_step(const std::function<Vec(const Vec&)>& rhs, double h,
             const Vec& x);

/// Trajectory of the metriplectic vector field under rk4_step, with the same
/// bookkeeping as integrate().
Trajectory integrate_rk4(const MetriplecticSystem& system, double h,
                         const Vec& x0, long n_steps);

enum class IntegratorKind { Metriplectic, Rk4 };

struct ConvergenceReport {
  std::vector<double> h_values;
  std::vector<double> errors;
  double slope = 0.0;
  bool inconclusive = false;
};

/// Global error at t_final against a same-method reference run at
/// h_ref = min(h_list)/20; the slope is the least-squares fit of log error
/// against log h. h_list must be strictly decreasing with at least three
/// entries dividing t_final. Errors below 1e-12 flag the study inconclusive.
ConvergenceReport convergence_study(const MetriplecticSystem& system,
                                    const IntegratorConfig& config,
                                    const Vec& x0, double t_final,
                                    const std::vector<double>& h_list,
                                    IntegratorKind kind =
                                        IntegratorKind::Metriplectic);

}  // namespace metriplectic

#endif  // METRIPLECTIC_INTEGRATOR_HPP
