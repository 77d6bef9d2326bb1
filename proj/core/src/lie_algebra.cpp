// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#include "metriplectic/lie_algebra.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <utility>

namespace metriplectic {

StructureConstants::StructureConstants(Index dim, std::vector<double> entries)
    : dim_(dim), c_(std::move(entries)) {
  if (dim <= 0) {
    throw ConfigError("StructureConstants: dim must be positive");
  }
  const std::size_t expected = static_cast<std::size_t>(dim * dim * dim);
  if (c_.size() != expected) {
    throw ConfigError("StructureConstants: expected " +
                      std::to_string(expected) + " entries, got " +
                      std::to_string(c_.size()));
  }
  double scale = 0.0;
  for (double v : c_) {
    scale = std::max(scale, std::abs(v));
  }
  const double tol = 1e-12 * (1.0 + scale);
  for (Index a = 0; a < dim; ++a) {
    for (Index b = 0; b < dim; ++b) {
      for (Index d = 0; d < dim; ++d) {
        if (std::abs(c(a, b, d) + c(b, a, d)) > tol) {
          throw ConfigError("StructureConstants: antisymmetry violated");
        }
      }
    }
  }
  // [[e_a,e_b],e_k] + [[e_b,e_k],e_a] + [[e_k,e_a],e_b] = 0 componentwise.
  const double jac_tol = 1e-12 * (1.0 + scale * scale);
  for (Index a = 0; a < dim; ++a) {
    for (Index b = 0; b < dim; ++b) {
      for (Index k = 0; k < dim; ++k) {
        for (Index f = 0; f < dim; ++f) {
          double sum = 0.0;
          for (Index e = 0; e < dim; ++e) {
            sum += c(a, b, e) * c(e, k, f) + c(b, k, e) * c(e, a, f) +
                   c(k, a, e) * c(e, b, f);
          }
          if (std::abs(sum) > jac_tol) {
            throw ConfigError("StructureConstants: Jacobi identity violated");
          }
        }
      }
    }
  }
}

StructureConstants StructureConstants::so3() {
  std::vector<double> entries(27, 0.0);
  auto at = [&entries](Index a, Index b, Index d) -> double& {
    return entries[static_cast<std::size_t>((a * 3 + b) * 3 + d)];
  };
  at(0, 1, 2) = 1.0;
  at(1, 0, 2) = -1.0;
  at(1, 2, 0) = 1.0;
  at(2, 1, 0) = -1.0;
  at(2, 0, 1) = 1.0;
  at(0, 2, 1) = -1.0;
  return StructureConstants(3, std::move(entries));
}

StructureConstants StructureConstants::abelian(Index dim) {
  return StructureConstants(
      dim, std::vector<double>(static_cast<std::size_t>(dim * dim * dim),
                               0.0));
}

AlgebraInnerProduct::AlgebraInnerProduct(Mat kg) {
  if (kg.rows() != kg.cols() || kg.rows() == 0) {
    throw ConfigError("AlgebraInnerProduct: matrix must be square");
  }
  kg_ = 0.5 * (kg + kg.transpose());
  if ((kg - kg_).cwiseAbs().maxCoeff() >
      1e-12 * (1.0 + kg_.cwiseAbs().maxCoeff())) {
    throw ConfigError("AlgebraInnerProduct: matrix not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(kg_, Eigen::EigenvaluesOnly);
  const double hi = es.eigenvalues().maxCoeff();
  if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, hi)) {
    throw ConfigError("AlgebraInnerProduct: matrix not positive "
                      "semidefinite");
  }
}

AlgebraInnerProduct AlgebraInnerProduct::identity(Index dim) {
  return AlgebraInnerProduct(Mat::Identity(dim, dim));
}

AlgebraInnerProduct AlgebraInnerProduct::zero(Index dim) {
  return AlgebraInnerProduct(Mat::Zero(dim, dim));
}

QuadraticLagrangian::QuadraticLagrangian(Mat inertia) {
  if (inertia.rows() != inertia.cols() || inertia.rows() == 0) {
    throw ConfigError("QuadraticLagrangian: inertia must be square");
  }
  inertia_ = 0.5 * (inertia + inertia.transpose());
  llt_.compute(inertia_);
  if (llt_.info() != Eigen::Success) {
    throw ConfigError("QuadraticLagrangian: inertia not positive definite");
  }
}

double QuadraticLagrangian::value(const Vec& xi) const {
  return 0.5 * xi.dot(inertia_ * xi);
}

ForceMap ForceMap::zero(Index dim) {
  ForceMap f;
  f.provenance = Provenance::UserSupplied;
  f.eval = [dim](const Vec&, const Vec&) { return Vec(Vec::Zero(dim)); };
  return f;
}

ForceMap ForceMap::user(std::function<Vec(const Vec&, const Vec&)> fn) {
  if (!fn) {
    throw ConfigError("ForceMap::user: null function");
  }
  ForceMap f;
  f.provenance = Provenance::UserSupplied;
  f.eval = std::move(fn);
  return f;
}

Vec bracket(const StructureConstants& sc, const Vec& xi, const Vec& eta) {
  const Index n = sc.dim();
  require_dim(xi, n, "bracket");
  require_dim(eta, n, "bracket");
  Vec out = Vec::Zero(n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const double w = xi[a] * eta[b];
      if (w == 0.0) {
        continue;
      }
      for (Index d = 0; d < n; ++d) {
        out[d] += sc.c(a, b, d) * w;
      }
    }
  }
  return out;
}

Vec coadjoint(const StructureConstants& sc, const Vec& xi, const Vec& alpha) {
  const Index n = sc.dim();
  require_dim(xi, n, "coadjoint");
  require_dim(alpha, n, "coadjoint");
  Vec out = Vec::Zero(n);
  for (Index b = 0; b < n; ++b) {
    double sum = 0.0;
    for (Index a = 0; a < n; ++a) {
      if (xi[a] == 0.0) {
        continue;
      }
      for (Index d = 0; d < n; ++d) {
        sum += sc.c(a, b, d) * xi[a] * alpha[d];
      }
    }
    out[b] = sum;
  }
  return out;
}

TensorField lie_poisson_tensor(const StructureConstants& sc) {
  const Index n = sc.dim();
  return TensorField::skew(n, [sc, n](const Vec& mu) {
    Mat pi = Mat::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        double sum = 0.0;
        for (Index d = 0; d < n; ++d) {
          sum -= sc.c(i, j, d) * mu[d];
        }
        pi(i, j) = sum;
      }
    }
    return pi;
  });
}

Vec forced_ep_rhs(const QuadraticLagrangian& lag, const StructureConstants& sc,
                  const ForceMap& force, const Vec& xi) {
  require_dim(xi, lag.dim(), "forced_ep_rhs");
  const Vec mu = lag.momentum(xi);
  return coadjoint(sc, xi, mu + force.eval(xi, mu));
}

Vec forced_lie_poisson_rhs(const StructureConstants& sc, const ScalarField& h,
                           const ForceMap& force, const Vec& mu) {
  require_dim(mu, sc.dim(), "forced_lie_poisson_rhs");
  const Vec xi = h.gradient(mu);
  return coadjoint(sc, xi, mu + force.eval(xi, mu));
}

ForceMap force_from_casimir(const StructureConstants& sc,
                            const AlgebraInnerProduct& kg,
                            const ScalarField& casimir) {
  if (kg.dim() != sc.dim()) {
    throw ConfigError("force_from_casimir: dimension mismatch");
  }
  if (!casimir) {
    throw ConfigError("force_from_casimir: empty Casimir field");
  }
  ForceMap f;
  f.provenance = ForceMap::Provenance::FromCasimir;
  const Mat kg_mat = kg.matrix();
  f.eval = [sc, kg_mat, casimir](const Vec& xi, const Vec& mu) {
    return Vec(kg_mat * bracket(sc, xi, casimir.gradient(mu)));
  };
  return f;
}

double casimir_rate(const StructureConstants& sc, const ScalarField& h,
                    const ForceMap& force, const ScalarField& c,
                    const Vec& mu) {
  require_dim(mu, sc.dim(), "casimir_rate");
  const Vec xi = h.gradient(mu);
  return force.eval(xi, mu).dot(bracket(sc, xi, c.gradient(mu)));
}

TensorField induced_symmetric_tensor(const StructureConstants& sc,
                                     const AlgebraInnerProduct& kg,
                                     const ScalarField& h,
                                     const ScalarField& /*c*/) {
  if (kg.dim() != sc.dim()) {
    throw ConfigError("induced_symmetric_tensor: dimension mismatch");
  }
  const Index n = sc.dim();
  const Mat kg_mat = kg.matrix();
  return TensorField::symmetric_psd(n, [sc, kg_mat, h, n](const Vec& mu) {
    const Vec xi = h.gradient(mu);
    Mat b(n, n);
    for (Index a = 0; a < n; ++a) {
      b.col(a) = bracket(sc, xi, Vec(Vec::Unit(n, a)));
    }
    return Mat(b.transpose() * kg_mat * b);
  });
}

ScalarField rigid_body_energy(const Vec& inertia) {
  if (inertia.size() == 0) {
    throw ConfigError("rigid_body_energy: empty inertia");
  }
  if (inertia.minCoeff() <= 0.0) {
    throw ConfigError("rigid_body_energy: inertia entries must be positive");
  }
  const Vec inv = inertia.cwiseInverse();
  return ScalarField(
      [inv](const Vec& p) { return 0.5 * p.dot(inv.cwiseProduct(p)); },
      [inv](const Vec& p) { return Vec(inv.cwiseProduct(p)); });
}

So3Preset so3_preset(const Vec& inertia) {
  require_dim(inertia, 3, "so3_preset");
  if (inertia.minCoeff() <= 0.0) {
    throw ConfigError("so3_preset: inertia entries must be positive");
  }
  return So3Preset{StructureConstants::so3(),
                   QuadraticLagrangian(Mat(inertia.asDiagonal())),
                   rigid_body_energy(inertia),
                   ScalarField::half_norm_squared()};
}

MetriplecticSystem rigid_body_system(const Vec& inertia) {
  return rigid_body_system_with_entropy(inertia,
                                        ScalarField::half_norm_squared());
}

MetriplecticSystem rigid_body_system_with_entropy(const Vec& inertia,
                                                  ScalarField entropy) {
  So3Preset preset = so3_preset(inertia);
  return make_system("so3-rigid-body", lie_poisson_tensor(preset.algebra),
                     MetricField::euclidean(3), preset.hamiltonian,
                     std::move(entropy));
}

}  // namespace metriplectic
