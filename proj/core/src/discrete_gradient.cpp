// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#include "metriplectic/discrete_gradient.hpp"

#include <cmath>
#include <limits>

namespace metriplectic {

DiscreteGradientScheme DiscreteGradientScheme::midpoint() {
  DiscreteGradientScheme s;
  s.kind = DiscreteGradientKind::Midpoint;
  return s;
}

DiscreteGradientScheme DiscreteGradientScheme::mean_value(int points) {
  DiscreteGradientScheme s;
  s.kind = DiscreteGradientKind::MeanValue;
  s.quadrature_points = points;
  return s;
}

DiscreteGradientScheme DiscreteGradientScheme::coordinate_increment() {
  DiscreteGradientScheme s;
  s.kind = DiscreteGradientKind::CoordinateIncrement;
  return s;
}

void gauss_legendre_01(int points, std::vector<double>& nodes,
                       std::vector<double>& weights) {
  if (points < 1) {
    throw ConfigError("gauss_legendre_01: need at least one point");
  }
  const int n = points;
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  // Newton iteration on P_n over [-1, 1], then affine map to [0, 1].
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - z);
    nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + z);
    weights[static_cast<std::size_t>(i)] = 0.5 * w;
    weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
  }
}

namespace {

Vec mean_value_gradient(const DiscreteGradientScheme& scheme,
                        const ScalarField& h, const Vec& x, const Vec& xp) {
  std::vector<double> nodes;
  std::vector<double> weights;
  gauss_legendre_01(scheme.quadrature_points, nodes, weights);
  const Vec delta = xp - x;
  Vec out = Vec::Zero(x.size());
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    out += weights[q] * h.gradient(x + nodes[q] * delta);
  }
  return out;
}

/// Rounding floor of a computed difference of the given magnitudes; below
/// it the difference carries no information and is treated as exact zero.
double noise_floor(double scale) {
  return 8.0 * std::numeric_limits<double>::epsilon() * scale;
}

Vec midpoint_gradient(const ScalarField& h, const Vec& x, const Vec& xp) {
  const Vec z = 0.5 * (x + xp);
  const Vec delta = xp - x;
  const Vec gz = h.gradient(z);
  const double hx = h.value(x);
  const double hxp = h.value(xp);
  const double along = gz.dot(delta);
  const double numerator = hxp - hx - along;
  // A numerator below its own rounding floor is cancellation noise; the
  // secant correction would amplify it by 1/|delta| and poison the implicit
  // solver near equilibria.
  if (std::abs(numerator) <=
      noise_floor(std::abs(hx) + std::abs(hxp) + std::abs(along))) {
    return gz;
  }
  return gz + (numerator / delta.squaredNorm()) * delta;
}

Vec coordinate_increment_gradient(const ScalarField& h, const Vec& x,
                                  const Vec& xp, double tau) {
  const Index n = x.size();
  Vec out(n);
  // y sweeps from x to xp one coordinate at a time.
  Vec y = x;
  double prev = h.value(y);
  for (Index i = 0; i < n; ++i) {
    const double di = xp[i] - x[i];
    if (std::abs(di) > tau) {
      y[i] = xp[i];
      const double next = h.value(y);
      // Same cancellation guard as the midpoint scheme: a sub-rounding
      // difference divided by a small increment is pure noise.
      if (std::abs(next - prev) <=
          noise_floor(std::abs(next) + std::abs(prev))) {
        y[i] = x[i];
        out[i] = h.partial(y, i);
        y[i] = xp[i];
      } else {
        out[i] = (next - prev) / di;
      }
      prev = next;
    } else {
      out[i] = h.partial(y, i);
      y[i] = xp[i];
      prev = h.value(y);
    }
  }
  return out;
}

}  // namespace

Vec discrete_gradient(const DiscreteGradientScheme& scheme,
                      const ScalarField& h, const Vec& x, const Vec& xp) {
  if (!h) {
    throw ConfigError("discrete_gradient: empty scalar field");
  }
  require_dim(xp, x.size(), "discrete_gradient");
  if (scheme.degeneracy_scale <= 0.0) {
    throw ConfigError("discrete_gradient: degeneracy_scale must be positive");
  }
  if (scheme.kind == DiscreteGradientKind::MeanValue &&
      scheme.quadrature_points < 2) {
    throw ConfigError("discrete_gradient: MeanValue needs >= 2 quadrature "
                      "points");
  }
  const double tau = scheme.degeneracy_scale * (1.0 + x.norm() + xp.norm());
  switch (scheme.kind) {
    case DiscreteGradientKind::MeanValue:
      if ((xp - x).norm() <= tau) {
        return h.gradient(0.5 * (x + xp));
      }
      return mean_value_gradient(scheme, h, x, xp);
    case DiscreteGradientKind::Midpoint:
      if ((xp - x).norm() <= tau) {
        return h.gradient(0.5 * (x + xp));
      }
      return midpoint_gradient(h, x, xp);
    case DiscreteGradientKind::CoordinateIncrement:
      return coordinate_increment_gradient(h, x, xp, tau);
  }
  throw ConfigError("discrete_gradient: unknown scheme kind");
}

AxiomReport verify_axioms(const DiscreteGradientScheme& scheme,
                          const ScalarField& h,
                          const std::vector<std::pair<Vec, Vec>>& samples) {
  AxiomReport report;
  for (const auto& [x, xp] : samples) {
    const Vec dg = discrete_gradient(scheme, h, x, xp);
    const double hx = h.value(x);
    const double hxp = h.value(xp);
    const double directional = std::abs(dg.dot(xp - x) - (hxp - hx)) /
                               (1.0 + std::abs(hx) + std::abs(hxp));
    report.max_directional = std::max(report.max_directional, directional);

    const Vec at_x = discrete_gradient(scheme, h, x, x);
    const Vec gx = h.gradient(x);
    const double consistency = (at_x - gx).norm() / (1.0 + gx.norm());
    report.max_consistency = std::max(report.max_consistency, consistency);
  }
  return report;
}

}  // namespace metriplectic
