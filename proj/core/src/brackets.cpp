// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#include "metriplectic/brackets.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <utility>

namespace metriplectic {

namespace {

void require_symmetry(const TensorField& t, SymmetryClass expected,
                      const char* context) {
  if (t.symmetry != expected) {
    throw ConfigError(std::string(context) + ": tensor has the wrong "
                      "symmetry class");
  }
}

}  // namespace

double evaluate_poisson_bracket(const TensorField& pi, const ScalarField& f,
                                const ScalarField& g, const Vec& x) {
  require_symmetry(pi, SymmetryClass::Skew, "evaluate_poisson_bracket");
  require_dim(x, pi.dim, "evaluate_poisson_bracket");
  return f.gradient(x).dot(pi.eval(x) * g.gradient(x));
}

double evaluate_symmetric_bracket(const TensorField& kappa,
                                  const ScalarField& f, const ScalarField& g,
                                  const Vec& x) {
  require_symmetry(kappa, SymmetryClass::SymmetricPsd,
                   "evaluate_symmetric_bracket");
  require_dim(x, kappa.dim, "evaluate_symmetric_bracket");
  return f.gradient(x).dot(kappa.eval(x) * g.gradient(x));
}

Vec hamiltonian_vector_field(const TensorField& pi, const ScalarField& h,
                             const Vec& x) {
  require_symmetry(pi, SymmetryClass::Skew, "hamiltonian_vector_field");
  require_dim(x, pi.dim, "hamiltonian_vector_field");
  return pi.eval(x) * h.gradient(x);
}

TensorField build_psd_from_metric(const MetricField& metric,
                                  const ScalarField& h) {
  if (!h) {
    throw ConfigError("build_psd_from_metric: empty Hamiltonian");
  }
  const Index dim = metric.dim;
  auto g_inv = metric.inverse;
  return TensorField::symmetric_psd(dim, [g_inv, h](const Vec& x) {
    const Mat gi = g_inv(x);
    const Vec dh = h.gradient(x);
    const Vec w = gi * dh;
    const double c_h = dh.dot(w);
    return Mat(c_h * gi - w * w.transpose());
  });
}

TensorField build_psd_multi_constraint(
    const MetricField& metric, const std::vector<ScalarField>& constraints) {
  if (constraints.empty()) {
    throw ConfigError("build_psd_multi_constraint: need at least one "
                      "constraint");
  }
  for (const ScalarField& c : constraints) {
    if (!c) {
      throw ConfigError("build_psd_multi_constraint: empty constraint field");
    }
  }
  const Index dim = metric.dim;
  auto g_inv = metric.inverse;
  auto fields = constraints;
  return TensorField::symmetric_psd(dim, [g_inv, fields, dim](const Vec& x) {
    const Mat gi = g_inv(x);
    const Index m = static_cast<Index>(fields.size());
    Mat l(dim, m);
    for (Index a = 0; a < m; ++a) {
      l.col(a) = fields[static_cast<std::size_t>(a)].gradient(x);
    }
    const Mat gram = l.transpose() * gi * l;
    // Moore-Penrose inverse of the Gram matrix; rank deficiency from
    // dependent constraints is handled by the singular-value cutoff.
    Eigen::JacobiSVD<Mat> svd(gram, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Vec inv_sv = Vec::Zero(sv.size());
    if (sv.size() > 0 && sv[0] > 0.0) {
      const double cutoff = 1e-12 * sv[0];
      for (Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > cutoff) {
          inv_sv[i] = 1.0 / sv[i];
        }
      }
    }
    const Mat gram_pinv =
        svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
    const Mat p = Mat::Identity(dim, dim) - l * gram_pinv * l.transpose() * gi;
    return Mat(p.transpose() * gi * p);
  });
}

ResidualReport check_jacobi(const TensorField& pi,
                            const std::vector<Vec>& samples, double h_fd) {
  require_symmetry(pi, SymmetryClass::Skew, "check_jacobi");
  if (h_fd <= 0.0) {
    throw ConfigError("check_jacobi: h_fd must be positive");
  }
  ResidualReport report;
  const Index n = pi.dim;
  for (const Vec& x : samples) {
    require_dim(x, n, "check_jacobi");
    // d_l Pi^{ij} by central differences: dpi[l](i, j).
    std::vector<Mat> dpi(static_cast<std::size_t>(n));
    Vec xp = x;
    for (Index l = 0; l < n; ++l) {
      const double xl = x[l];
      xp[l] = xl + h_fd;
      const Mat plus = pi.eval(xp);
      xp[l] = xl - h_fd;
      const Mat minus = pi.eval(xp);
      xp[l] = xl;
      dpi[static_cast<std::size_t>(l)] = (plus - minus) / (2.0 * h_fd);
    }
    const Mat p = pi.eval(x);
    double local = 0.0;
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        for (Index k = j + 1; k < n; ++k) {
          double sum = 0.0;
          for (Index l = 0; l < n; ++l) {
            const Mat& dl = dpi[static_cast<std::size_t>(l)];
            sum += p(i, l) * dl(j, k) + p(k, l) * dl(i, j) +
                   p(j, l) * dl(k, i);
          }
          local = std::max(local, std::abs(sum));
        }
      }
    }
    if (local >= report.max_residual) {
      report.max_residual = local;
      report.worst_state = x;
    }
  }
  return report;
}

ResidualReport check_casimir(const TensorField& pi, const ScalarField& c,
                             const std::vector<Vec>& samples) {
  require_symmetry(pi, SymmetryClass::Skew, "check_casimir");
  ResidualReport report;
  for (const Vec& x : samples) {
    require_dim(x, pi.dim, "check_casimir");
    const Mat p = pi.eval(x);
    const Vec dc = c.gradient(x);
    const double scale = 1.0 + p.cwiseAbs().maxCoeff() *
                                   dc.cwiseAbs().maxCoeff();
    const double local = (p * dc).cwiseAbs().maxCoeff() / scale;
    if (local >= report.max_residual) {
      report.max_residual = local;
      report.worst_state = x;
    }
  }
  return report;
}

MetriplecticSystem make_system(std::string id, TensorField pi,
                               MetricField metric, ScalarField hamiltonian,
                               ScalarField entropy) {
  if (pi.symmetry != SymmetryClass::Skew) {
    throw ConfigError("make_system: pi must be a Skew field");
  }
  if (pi.dim != metric.dim) {
    throw ConfigError("make_system: pi and metric dimensions differ");
  }
  if (!hamiltonian || !entropy) {
    throw ConfigError("make_system: empty Hamiltonian or entropy");
  }
  MetriplecticSystem system;
  system.id = std::move(id);
  system.kappa = build_psd_from_metric(metric, hamiltonian);
  system.pi = std::move(pi);
  system.hamiltonian = std::move(hamiltonian);
  system.entropy = std::move(entropy);
  system.metric = std::move(metric);
  return system;
}

MetriplecticSystem make_conservative_system(std::string id, TensorField pi,
                                            ScalarField hamiltonian,
                                            ScalarField entropy) {
  if (pi.symmetry != SymmetryClass::Skew) {
    throw ConfigError("make_conservative_system: pi must be a Skew field");
  }
  if (!hamiltonian || !entropy) {
    throw ConfigError("make_conservative_system: empty Hamiltonian or "
                      "entropy");
  }
  MetriplecticSystem system;
  system.id = std::move(id);
  system.kappa = TensorField::zero(pi.dim, SymmetryClass::SymmetricPsd);
  system.pi = std::move(pi);
  system.hamiltonian = std::move(hamiltonian);
  system.entropy = std::move(entropy);
  return system;
}

SystemValidation validate_system(const MetriplecticSystem& system,
                                 const std::vector<Vec>& samples) {
  SystemValidation v;
  for (const Vec& x : samples) {
    require_dim(x, system.dim(), "validate_system");
    const Mat k = system.kappa.eval(x);
    const Vec dh = system.hamiltonian.gradient(x);
    const double k_scale =
        1.0 + k.cwiseAbs().maxCoeff() * dh.cwiseAbs().maxCoeff();
    v.kernel_residual = std::max(
        v.kernel_residual, (k * dh).cwiseAbs().maxCoeff() / k_scale);

    const Mat p = system.pi.eval(x);
    const Vec ds = system.entropy.gradient(x);
    const double p_scale =
        1.0 + p.cwiseAbs().maxCoeff() * ds.cwiseAbs().maxCoeff();
    v.casimir_residual = std::max(
        v.casimir_residual, (p * ds).cwiseAbs().maxCoeff() / p_scale);
  }
  v.gradient_residual =
      std::max(gradient_consistency(system.hamiltonian, samples),
               gradient_consistency(system.entropy, samples));
  return v;
}

std::function<Vec(const Vec&)> metriplectic_vector_field(
    const MetriplecticSystem& system) {
  return [system](const Vec& x) {
    return Vec(system.pi.eval(x) * system.hamiltonian.gradient(x) +
               system.kappa.eval(x) * system.entropy.gradient(x));
  };
}

}  // namespace metriplectic
