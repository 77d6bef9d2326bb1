// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#ifndef METRIPLECTIC_SCALAR_FIELD_HPP
#define METRIPLECTIC_SCALAR_FIELD_HPP

#include <functional>
#include <utility>
#include <vector>

#include "metriplectic/types.hpp"

namespace metriplectic {

/// Differentiable real-valued function of the state (an energy, entropy,
/// Casimir or auxiliary invariant). Carries an optional analytic gradient;
/// without one, gradients come from central finite differences with step
/// cbrt(machine epsilon) * (1 + |x|).
class ScalarField {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradFn = std::function<Vec(const Vec&)>;

  ScalarField() = default;
  explicit ScalarField(ValueFn value) : value_(std::move(value)) {}
  ScalarField(ValueFn value, GradFn gradient)
      : value_(std::move(value)), grad_(std::move(gradient)) {}

  double value(const Vec& x) const { return value_(x); }
  Vec gradient(const Vec& x) const;
  /// Single partial derivative, analytic when available.
  double partial(const Vec& x, Index i) const;

  bool has_analytic_gradient() const { return static_cast<bool>(grad_); }
  explicit operator bool() const { return static_cast<bool>(value_); }

  /// x -> c with zero gradient.
  static ScalarField constant(double c);
  /// x -> x' A x / 2 with gradient sym(A) x. A is symmetrized on entry.
  static ScalarField quadratic_form(const Mat& a);
  /// x -> |x|^2 / 2, gradient x.
  static ScalarField half_norm_squared();
  /// x -> |x|^4 / 4, gradient |x|^2 x.
  static ScalarField quarter_norm_fourth();

 private:
  ValueFn value_;
  GradFn grad_;
};

/// Finite-difference step used by the gradient fallback.
double fd_step(const Vec& x);

/// Max relative deviation between the analytic gradient and central finite
/// differences over the samples. Fields without an analytic gradient
/// trivially report zero.
double gradient_consistency(const ScalarField& f,
                            const std::vector<Vec>& samples);

}  // namespace metriplectic

#endif  // METRIPLECTIC_SCALAR_FIELD_HPP
