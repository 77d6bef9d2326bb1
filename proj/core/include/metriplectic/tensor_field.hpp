// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#ifndef METRIPLECTIC_TENSOR_FIELD_HPP
#define METRIPLECTIC_TENSOR_FIELD_HPP

#include <functional>
#include <vector>

#include "metriplectic/types.hpp"

namespace metriplectic {

enum class SymmetryClass { Skew, SymmetricPsd };

/// State-dependent n x n matrix field with a declared symmetry class:
/// Skew for Poisson tensor candidates, SymmetricPsd for metric bracket
/// candidates. The factories wrap the raw callable so that evaluations are
/// exactly skew (resp. exactly symmetric) as stored.
struct TensorField {
  SymmetryClass symmetry = SymmetryClass::Skew;
  Index dim = 0;
  std::function<Mat(const Vec&)> eval;

  static TensorField skew(Index dim, std::function<Mat(const Vec&)> fn);
  static TensorField symmetric_psd(Index dim,
                                   std::function<Mat(const Vec&)> fn);
  static TensorField zero(Index dim, SymmetryClass symmetry);
};

/// Riemannian cometric: g_inv(x) is the symmetric positive-definite matrix
/// of inner products of coordinate differentials (the inverse of the metric
/// component matrix).
struct MetricField {
  Index dim = 0;
  std::function<Mat(const Vec&)> inverse;

  static MetricField euclidean(Index dim);
  /// Constant cometric; rejects matrices that are not symmetric positive
  /// definite.
  static MetricField constant_inverse(const Mat& g_inv);
};

/// Largest deviation from the declared symmetry over the samples, scaled by
/// the Frobenius norm of the field at each sample (zero matrices count as
/// exact).
double max_symmetry_residual(const TensorField& tf,
                             const std::vector<Vec>& samples);

/// Smallest eigenvalue over the samples, scaled by the Frobenius norm at
/// each sample. Meaningful for SymmetricPsd fields, where it should not dip
/// below -1e-12.
double min_scaled_eigenvalue(const TensorField& tf,
                             const std::vector<Vec>& samples);

/// Rank from singular values with relative cutoff (default 1e-10).
int numerical_rank(const Mat& m, double rel_cutoff = 1e-10);

}  // namespace metriplectic

#endif  // METRIPLECTIC_TENSOR_FIELD_HPP
