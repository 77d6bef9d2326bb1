// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#ifndef METRIPLECTIC_BRACKETS_HPP
#define METRIPLECTIC_BRACKETS_HPP

#include <optional>
#include <string>
#include <vector>

#include "metriplectic/scalar_field.hpp"
#include "metriplectic/tensor_field.hpp"
#include "metriplectic/types.hpp"

namespace metriplectic {

/// {f, g}(x) = grad f(x)' Pi(x) grad g(x). Requires a Skew field.
double evaluate_poisson_bracket(const TensorField& pi, const ScalarField& f,
                                const ScalarField& g, const Vec& x);

/// (f, g)(x) = grad f(x)' K(x) grad g(x). Requires a SymmetricPsd field;
/// symmetric in (f, g) and nonnegative for f = g.
double evaluate_symmetric_bracket(const TensorField& kappa,
                                  const ScalarField& f, const ScalarField& g,
                                  const Vec& x);

/// X_H(x) = Pi(x) grad H(x); always orthogonal to grad H(x).
Vec hamiltonian_vector_field(const TensorField& pi, const ScalarField& h,
                             const Vec& x);

/// PSD field K = C_H G^-1 - (G^-1 grad H)(G^-1 grad H)' with
/// C_H = grad H' G^-1 grad H. K grad H = 0 by construction; K is the zero
/// matrix at critical points of H.
TensorField build_psd_from_metric(const MetricField& metric,
                                  const ScalarField& h);

/// PSD field whose kernel contains every constraint differential:
/// K(df, dg) = g*(P df, P dg) with P the g*-orthogonal projector onto the
/// complement of span{dL_a}. The Gram matrix of the constraints is inverted
/// by Moore-Penrose pseudo-inverse with singular-value cutoff
/// 1e-12 * sigma_max, so dependent or duplicated constraints are fine.
/// With the single constraint H this equals build_psd_from_metric divided
/// by the scalar C_H.
TensorField build_psd_multi_constraint(
    const MetricField& metric, const std::vector<ScalarField>& constraints);

struct ResidualReport {
  double max_residual = 0.0;
  Vec worst_state;
};

/// Max absolute residual of the coordinate Jacobi identity
///   sum_l (Pi^il d_l Pi^jk + Pi^kl d_l Pi^ij + Pi^jl d_l Pi^ki)
/// over all index triples and samples, with central finite differences of
/// step h_fd for the tensor derivatives.
ResidualReport check_jacobi(const TensorField& pi,
                            const std::vector<Vec>& samples, double h_fd);

/// Max over samples of |Pi(x) grad C(x)| / (1 + |Pi(x)| |grad C(x)|); zero
/// exactly when C is a Casimir of the tensor at the samples.
ResidualReport check_casimir(const TensorField& pi, const ScalarField& c,
                             const std::vector<Vec>& samples);

/// Bundle for the dynamics dx/dt = Pi grad H + K grad S. The metric is kept
/// so the integrator can rebuild its discrete dissipative product around the
/// discrete gradient; systems without one integrate conservatively (K = 0).
struct MetriplecticSystem {
  std::string id;
  TensorField pi;
  TensorField kappa;
  ScalarField hamiltonian;
  ScalarField entropy;
  std::optional<MetricField> metric;

  Index dim() const { return pi.dim; }
};

/// kappa is derived from the metric via build_psd_from_metric, so
/// K grad H = 0 holds by construction.
MetriplecticSystem make_system(std::string id, TensorField pi,
                               MetricField metric, ScalarField hamiltonian,
                               ScalarField entropy);

/// No dissipative bracket: pure Poisson dynamics of H (S is tracked as a
/// diagnostic only).
MetriplecticSystem make_conservative_system(std::string id, TensorField pi,
                                            ScalarField hamiltonian,
                                            ScalarField entropy);

struct SystemValidation {
  double kernel_residual = 0.0;   // |K grad H| / (1 + |K| |grad H|)
  double casimir_residual = 0.0;  // |Pi grad S| / (1 + |Pi| |grad S|)
  double gradient_residual = 0.0; // analytic-vs-FD gradient deviation
};

/// Checks the defining compatibility conditions at the samples.
SystemValidation validate_system(const MetriplecticSystem& system,
                                 const std::vector<Vec>& samples);

/// x -> Pi(x) grad H(x) + K(x) grad S(x).
std::function<Vec(const Vec&)> metriplectic_vector_field(
    const MetriplecticSystem& system);

}  // namespace metriplectic

#endif  // METRIPLECTIC_BRACKETS_HPP
