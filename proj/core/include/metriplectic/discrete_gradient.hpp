// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#ifndef METRIPLECTIC_DISCRETE_GRADIENT_HPP
#define METRIPLECTIC_DISCRETE_GRADIENT_HPP

#include <utility>
#include <vector>

#include "metriplectic/scalar_field.hpp"
#include "metriplectic/types.hpp"

namespace metriplectic {

enum class DiscreteGradientKind {
  /// Averaged gradient along the segment, integral approximated by
  /// Gauss-Legendre quadrature (exact up to degree 2 * points - 1).
  MeanValue,
  /// Midpoint gradient plus the secant correction along x' - x. Satisfies
  /// the directional identity exactly and is symmetric in (x, x').
  Midpoint,
  /// Per-coordinate divided differences taken in state index order. Exact
  /// directional identity; not symmetric in (x, x').
  CoordinateIncrement,
};

struct DiscreteGradientScheme {
  DiscreteGradientKind kind = DiscreteGradientKind::Midpoint;
  int quadrature_points = 10;  // MeanValue only; >= 2
  /// x' ~ x fallback threshold, applied as
  /// degeneracy_scale * (1 + |x| + |x'|).
  double degeneracy_scale = 1e-14;

  static DiscreteGradientScheme midpoint();
  static DiscreteGradientScheme mean_value(int points = 10);
  static DiscreteGradientScheme coordinate_increment();
};

/// Two-point gradient with the defining properties
///   (a) dg(x, x')' (x' - x) = H(x') - H(x),
///   (b) dg(x, x) = grad H(x).
/// For MeanValue, (a) holds up to the quadrature error (exactly on
/// polynomials within the exactness degree). Below the degeneracy threshold
/// the midpoint gradient (MeanValue, Midpoint) or the per-coordinate partial
/// derivative (CoordinateIncrement) is returned.
Vec discrete_gradient(const DiscreteGradientScheme& scheme,
                      const ScalarField& h, const Vec& x, const Vec& xp);

struct AxiomReport {
  /// max |dg(x,x')'(x'-x) - (H(x')-H(x))| / (1 + |H(x)| + |H(x')|)
  double max_directional = 0.0;
  /// max |dg(x,x) - grad H(x)| / (1 + |grad H(x)|)
  double max_consistency = 0.0;
};

AxiomReport verify_axioms(const DiscreteGradientScheme& scheme,
                          const ScalarField& h,
                          const std::vector<std::pair<Vec, Vec>>& samples);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int points, std::vector<double>& nodes,
                       std::vector<double>& weights);

}  // namespace metriplectic

#endif  // METRIPLECTIC_DISCRETE_GRADIENT_HPP
