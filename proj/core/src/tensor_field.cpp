// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#include "metriplectic/tensor_field.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace metriplectic {

namespace {

void check_eval_dim(const Mat& m, Index dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw ConfigError(std::string(what) + ": evaluator returned " +
                      std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + ", expected " +
                      std::to_string(dim) + "x" + std::to_string(dim));
  }
}

}  // namespace

TensorField TensorField::skew(Index dim, std::function<Mat(const Vec&)> eval) {
  if (dim <= 0) {
    throw ConfigError("TensorField::skew: dim must be positive");
  }
  if (!eval) {
    throw ConfigError("TensorField::skew: null evaluator");
  }
  TensorField t;
  t.symmetry = SymmetryClass::Skew;
  t.dim = dim;
  t.eval = [dim, raw = std::move(eval)](const Vec& x) {
    Mat m = raw(x);
    check_eval_dim(m, dim, "skew tensor");
    return Mat(0.5 * (m - m.transpose()));
  };
  return t;
}

TensorField TensorField::symmetric_psd(
    Index dim, std::function<Mat(const Vec&)> eval) {
  if (dim <= 0) {
    throw ConfigError("TensorField::symmetric_psd: dim must be positive");
  }
  if (!eval) {
    throw ConfigError("TensorField::symmetric_psd: null evaluator");
  }
  TensorField t;
  t.symmetry = SymmetryClass::SymmetricPsd;
  t.dim = dim;
  t.eval = [dim, raw = std::move(eval)](const Vec& x) {
    Mat m = raw(x);
    check_eval_dim(m, dim, "symmetric tensor");
    return Mat(0.5 * (m + m.transpose()));
  };
  return t;
}

TensorField TensorField::zero(Index dim, SymmetryClass symmetry) {
  if (dim <= 0) {
    throw ConfigError("TensorField::zero: dim must be positive");
  }
  TensorField t;
  t.symmetry = symmetry;
  t.dim = dim;
  t.eval = [dim](const Vec&) { return Mat(Mat::Zero(dim, dim)); };
  return t;
}

MetricField MetricField::euclidean(Index dim) {
  if (dim <= 0) {
    throw ConfigError("MetricField::euclidean: dim must be positive");
  }
  MetricField g;
  g.dim = dim;
  g.inverse = [dim](const Vec&) { return Mat(Mat::Identity(dim, dim)); };
  return g;
}

MetricField MetricField::constant_inverse(const Mat& g_inv) {
  if (g_inv.rows() != g_inv.cols() || g_inv.rows() == 0) {
    throw ConfigError("MetricField::constant_inverse: matrix must be square");
  }
  const Mat sym = 0.5 * (g_inv + g_inv.transpose());
  if ((g_inv - sym).cwiseAbs().maxCoeff() >
      1e-12 * (1.0 + sym.cwiseAbs().maxCoeff())) {
    throw ConfigError("MetricField::constant_inverse: matrix not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <=
      1e-12 * std::max(1.0, es.eigenvalues().maxCoeff())) {
    throw ConfigError(
        "MetricField::constant_inverse: matrix not positive definite");
  }
  MetricField g;
  g.dim = sym.rows();
  g.inverse = [sym](const Vec&) { return sym; };
  return g;
}

double max_symmetry_residual(const TensorField& t,
                             const std::vector<Vec>& samples) {
  double worst = 0.0;
  for (const Vec& x : samples) {
    const Mat m = t.eval(x);
    const double scale = m.norm();
    if (scale == 0.0) {
      continue;
    }
    const Mat r = (t.symmetry == SymmetryClass::Skew)
                      ? Mat(m + m.transpose())
                      : Mat(m - m.transpose());
    worst = std::max(worst, r.cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

double min_scaled_eigenvalue(const TensorField& t,
                             const std::vector<Vec>& samples) {
  double worst = 0.0;
  for (const Vec& x : samples) {
    const Mat m = t.eval(x);
    const double scale = m.norm();
    if (scale == 0.0) {
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()),
                                          Eigen::EigenvaluesOnly);
    worst = std::min(worst, es.eigenvalues().minCoeff() / scale);
  }
  return worst;
}

int numerical_rank(const Mat& m, double rel_cutoff) {
  if (m.size() == 0) {
    return 0;
  }
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) {
    return 0;
  }
  const double cutoff = rel_cutoff * sv[0];
  int rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) {
      ++rank;
    }
  }
  return rank;
}

}  // namespace metriplectic
