// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#include "metriplectic/integrator.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <utility>

namespace metriplectic {

Mat build_kd(const MetricField& metric, const Vec& dg_value, const Vec& z,
             KdVariant variant) {
  require_dim(dg_value, metric.dim, "build_kd");
  require_dim(z, metric.dim, "build_kd");
  const Mat gi = metric.inverse(z);
  const Vec w = gi * dg_value;
  const double cbar = dg_value.dot(w);
  Mat kd = cbar * gi - w * w.transpose();
  if (variant == KdVariant::Scaled) {
    kd *= cbar;
  }
  return kd;
}

namespace {

void validate_config(const IntegratorConfig& config) {
  if (config.step_h <= 0.0) {
    throw ConfigError("IntegratorConfig: step_h must be positive");
  }
  if (config.solver_tol <= 0.0) {
    throw ConfigError("IntegratorConfig: solver_tol must be positive");
  }
  if (config.max_iters < 1) {
    throw ConfigError("IntegratorConfig: max_iters must be at least 1");
  }
}

/// Right-hand side of the step equation at the trial endpoint:
/// Pi(z) dg_H(x, x') + K_d(z) grad S(z), z = (x + x')/2. Systems without a
/// metric drop the dissipative term.
Vec step_rhs(const MetriplecticSystem& system, const IntegratorConfig& config,
             const Vec& x, const Vec& xp) {
  const Vec z = 0.5 * (x + xp);
  const Vec dg = discrete_gradient(config.scheme, system.hamiltonian, x, xp);
  Vec rhs = system.pi.eval(z) * dg;
  if (system.metric) {
    rhs.noalias() += build_kd(*system.metric, dg, z, config.kd_variant) *
                     system.entropy.gradient(z);
  }
  return rhs;
}

double step_residual(const Vec& x, const Vec& xp, double h, const Vec& rhs) {
  return (xp - x - h * rhs).lpNorm<Eigen::Infinity>() /
         (1.0 + x.lpNorm<Eigen::Infinity>());
}

/// Damped finite-difference Newton on G(x') = x' - x - h F(x, x').
Vec newton_solve(const MetriplecticSystem& system,
                 const IntegratorConfig& config, const Vec& x, double h,
                 Vec xp, int iters_used, int* iters_out,
                 double* residual_out) {
  const Index n = x.size();
  double residual = step_residual(x, xp, h, step_rhs(system, config, x, xp));
  for (int m = iters_used; m < config.max_iters; ++m) {
    if (residual <= config.solver_tol) {
      if (iters_out) {
        *iters_out = m;
      }
      if (residual_out) {
        *residual_out = residual;
      }
      return xp;
    }
    const Vec g0 = xp - x - h * step_rhs(system, config, x, xp);
    Mat jac(n, n);
    const double delta = fd_step(xp);
    Vec probe = xp;
    for (Index j = 0; j < n; ++j) {
      const double saved = probe[j];
      probe[j] = saved + delta;
      const Vec gp = probe - x - h * step_rhs(system, config, x, probe);
      probe[j] = saved - delta;
      const Vec gm = probe - x - h * step_rhs(system, config, x, probe);
      probe[j] = saved;
      jac.col(j) = (gp - gm) / (2.0 * delta);
    }
    const Vec dx = jac.partialPivLu().solve(g0);
    if (!dx.allFinite()) {
      throw SolverFailure("newton_solve: singular step Jacobian", residual,
                          m);
    }
    xp -= dx;
    residual = step_residual(x, xp, h, step_rhs(system, config, x, xp));
  }
  if (residual <= config.solver_tol) {
    if (iters_out) {
      *iters_out = config.max_iters;
    }
    if (residual_out) {
      *residual_out = residual;
    }
    return xp;
  }
  throw SolverFailure("newton_solve: no convergence after " +
                          std::to_string(config.max_iters) + " iterations",
                      residual, config.max_iters);
}

}  // namespace

Vec solve_step(const MetriplecticSystem& system,
               const IntegratorConfig& config, const Vec& x, double h,
               int* iters_out, double* residual_out) {
  validate_config(config);
  require_dim(x, system.dim(), "solve_step");
  require_finite(x, "solve_step");

  // Explicit Euler predictor.
  Vec xp = x + h * step_rhs(system, config, x, x);
  if (config.solver == SolverKind::NewtonFd) {
    return newton_solve(system, config, x, h, std::move(xp), 0, iters_out,
                        residual_out);
  }

  double residual = step_residual(x, xp, h, step_rhs(system, config, x, xp));
  int stalled = 0;
  for (int m = 0; m < config.max_iters; ++m) {
    if (residual <= config.solver_tol) {
      if (iters_out) {
        *iters_out = m;
      }
      if (residual_out) {
        *residual_out = residual;
      }
      return xp;
    }
    const Vec next = x + h * step_rhs(system, config, x, xp);
    if (!next.allFinite()) {
      throw SolverFailure("solve_step: iteration diverged", residual, m);
    }
    const double next_residual =
        step_residual(x, next, h, step_rhs(system, config, x, next));
    stalled = (next_residual >= residual) ? stalled + 1 : 0;
    xp = next;
    residual = next_residual;
    if (stalled >= 5) {
      return newton_solve(system, config, x, h, std::move(xp), m + 1,
                          iters_out, residual_out);
    }
  }
  if (residual <= config.solver_tol) {
    if (iters_out) {
      *iters_out = config.max_iters;
    }
    if (residual_out) {
      *residual_out = residual;
    }
    return xp;
  }
  throw SolverFailure("solve_step: no convergence after " +
                          std::to_string(config.max_iters) + " iterations",
                      residual, config.max_iters);
}

std::pair<Vec, StepRecord> metriplectic_step(const MetriplecticSystem& system,
                                             const IntegratorConfig& config,
                                             const Vec& x) {
  int iters = 0;
  double residual = 0.0;
  Vec xp = solve_step(system, config, x, config.step_h, &iters, &residual);
  StepRecord record;
  record.state = xp;
  record.energy = system.hamiltonian.value(xp);
  record.entropy = system.entropy.value(xp);
  record.delta_entropy = record.entropy - system.entropy.value(x);
  record.solver_iters = iters;
  record.residual = residual;
  return {std::move(xp), std::move(record)};
}

namespace {

StepRecord initial_record(const MetriplecticSystem& system, const Vec& x0) {
  StepRecord r;
  r.t = 0.0;
  r.state = x0;
  r.energy = system.hamiltonian.value(x0);
  r.entropy = system.entropy.value(x0);
  return r;
}

}  // namespace

Trajectory integrate(const MetriplecticSystem& system,
                     const IntegratorConfig& config, const Vec& x0,
                     long n_steps) {
  validate_config(config);
  if (n_steps < 0) {
    throw ConfigError("integrate: n_steps must be nonnegative");
  }
  require_dim(x0, system.dim(), "integrate");
  require_finite(x0, "integrate");

  Trajectory traj;
  traj.config = config;
  traj.records.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.records.push_back(initial_record(system, x0));

  Vec x = x0;
  for (long k = 1; k <= n_steps; ++k) {
    try {
      auto [xp, record] = metriplectic_step(system, config, x);
      record.t = static_cast<double>(k) * config.step_h;
      traj.records.push_back(std::move(record));
      x = std::move(xp);
    } catch (const SolverFailure& failure) {
      traj.truncated = true;
      traj.failure = "step " + std::to_string(k) + ": " + failure.what() +
                     " (residual " + std::to_string(failure.residual) + ")";
      break;
    }
  }
  return traj;
}

Vec rk4_step(const std::function<Vec(const Vec&)>& rhs, double h,
             const Vec& x) {
  const Vec k1 = rhs(x);
  const Vec k2 = rhs(x + (0.5 * h) * k1);
  const Vec k3 = rhs(x + (0.5 * h) * k2);
  const Vec k4 = rhs(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate_rk4(const MetriplecticSystem& system, double h,
                         const Vec& x0, long n_steps) {
  if (h <= 0.0) {
    throw ConfigError("integrate_rk4: h must be positive");
  }
  if (n_steps < 0) {
    throw ConfigError("integrate_rk4: n_steps must be nonnegative");
  }
  require_dim(x0, system.dim(), "integrate_rk4");
  require_finite(x0, "integrate_rk4");

  const auto rhs = metriplectic_vector_field(system);
  Trajectory traj;
  traj.config.step_h = h;
  traj.records.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.records.push_back(initial_record(system, x0));

  Vec x = x0;
  for (long k = 1; k <= n_steps; ++k) {
    Vec xp = rk4_step(rhs, h, x);
    if (!xp.allFinite()) {
      traj.truncated = true;
      traj.failure = "step " + std::to_string(k) + ": state left the "
                     "finite range";
      break;
    }
    StepRecord record;
    record.t = static_cast<double>(k) * h;
    record.energy = system.hamiltonian.value(xp);
    record.entropy = system.entropy.value(xp);
    record.delta_entropy = record.entropy - system.entropy.value(x);
    record.state = xp;
    traj.records.push_back(std::move(record));
    x = std::move(xp);
  }
  return traj;
}

ConvergenceReport convergence_study(const MetriplecticSystem& system,
                                    const IntegratorConfig& config,
                                    const Vec& x0, double t_final,
                                    const std::vector<double>& h_list,
                                    IntegratorKind kind) {
  if (h_list.size() < 3) {
    throw ConfigError("convergence_study: need at least three step sizes");
  }
  for (std::size_t i = 0; i + 1 < h_list.size(); ++i) {
    if (!(h_list[i] > h_list[i + 1])) {
      throw ConfigError("convergence_study: h_list must be strictly "
                        "decreasing");
    }
  }
  if (h_list.back() <= 0.0) {
    throw ConfigError("convergence_study: step sizes must be positive");
  }
  if (t_final <= 0.0) {
    throw ConfigError("convergence_study: t_final must be positive");
  }
  auto steps_for = [t_final](double h) {
    const long n = std::lround(t_final / h);
    if (n < 1 || std::abs(static_cast<double>(n) * h - t_final) >
                     1e-9 * t_final) {
      throw ConfigError("convergence_study: step size " + std::to_string(h) +
                        " does not divide t_final");
    }
    return n;
  };

  auto run_to_t_final = [&](double h) {
    const long n = steps_for(h);
    Trajectory traj;
    if (kind == IntegratorKind::Metriplectic) {
      IntegratorConfig c = config;
      c.step_h = h;
      traj = integrate(system, c, x0, n);
    } else {
      traj = integrate_rk4(system, h, x0, n);
    }
    if (traj.truncated) {
      throw SolverFailure("convergence_study: run at h = " +
                              std::to_string(h) + " failed: " + traj.failure,
                          0.0, 0);
    }
    return traj.records.back().state;
  };

  const Vec reference = run_to_t_final(h_list.back() / 20.0);

  ConvergenceReport report;
  report.h_values = h_list;
  report.errors.reserve(h_list.size());
  for (double h : h_list) {
    const double err = (run_to_t_final(h) - reference).norm();
    report.errors.push_back(err);
    if (err < 1e-12) {
      report.inconclusive = true;
    }
  }

  // Least-squares slope of log error against log h.
  const std::size_t n = h_list.size();
  double su = 0.0;
  double sv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    su += std::log(h_list[i]);
    sv += std::log(std::max(report.errors[i], 1e-300));
  }
  const double mu = su / static_cast<double>(n);
  const double mv = sv / static_cast<double>(n);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double du = std::log(h_list[i]) - mu;
    num += du * (std::log(std::max(report.errors[i], 1e-300)) - mv);
    den += du * du;
  }
  report.slope = num / den;
  return report;
}

}  // namespace metriplectic
