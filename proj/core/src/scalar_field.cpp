// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#include "metriplectic/scalar_field.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace metriplectic {

bool all_finite(const Vec& v) { return v.allFinite(); }

void require_finite(const Vec& v, const char* context) {
  if (!v.allFinite()) {
    throw ConfigError(std::string(context) + ": non-finite entries");
  }
}

void require_dim(const Vec& v, Index n, const char* context) {
  if (v.size() != n) {
    throw ConfigError(std::string(context) + ": dimension mismatch, got " +
                      std::to_string(v.size()) + ", expected " +
                      std::to_string(n));
  }
}

std::vector<Vec> sample_states(Index dim, int count, std::uint64_t seed,
                               double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<Vec> states;
  states.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Vec x(dim);
    for (Index i = 0; i < dim; ++i) {
      x[i] = dist(rng);
    }
    states.push_back(std::move(x));
  }
  return states;
}

double fd_step(const Vec& x) {
  static const double cbrt_eps =
      std::cbrt(std::numeric_limits<double>::epsilon());
  return cbrt_eps * (1.0 + x.norm());
}

Vec ScalarField::gradient(const Vec& x) const {
  if (grad_) {
    return grad_(x);
  }
  const double h = fd_step(x);
  Vec g(x.size());
  Vec xp = x;
  for (Index i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    xp[i] = xi + h;
    const double fp = value_(xp);
    xp[i] = xi - h;
    const double fm = value_(xp);
    xp[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

double ScalarField::partial(const Vec& x, Index i) const {
  if (grad_) {
    return grad_(x)[i];
  }
  const double h = fd_step(x);
  Vec xp = x;
  xp[i] = x[i] + h;
  const double fp = value_(xp);
  xp[i] = x[i] - h;
  const double fm = value_(xp);
  return (fp - fm) / (2.0 * h);
}

ScalarField ScalarField::constant(double c) {
  return ScalarField([c](const Vec&) { return c; },
                     [](const Vec& x) { return Vec(Vec::Zero(x.size())); });
}

ScalarField ScalarField::quadratic_form(const Mat& a) {
  Mat sym = 0.5 * (a + a.transpose());
  return ScalarField(
      [sym](const Vec& x) { return 0.5 * x.dot(sym * x); },
      [sym](const Vec& x) { return Vec(sym * x); });
}

ScalarField ScalarField::half_norm_squared() {
  return ScalarField([](const Vec& x) { return 0.5 * x.squaredNorm(); },
                     [](const Vec& x) { return x; });
}

ScalarField ScalarField::quarter_norm_fourth() {
  return ScalarField(
      [](const Vec& x) {
        const double n2 = x.squaredNorm();
        return 0.25 * n2 * n2;
      },
      [](const Vec& x) { return Vec(x.squaredNorm() * x); });
}

double gradient_consistency(const ScalarField& f,
                            const std::vector<Vec>& samples) {
  if (!f.has_analytic_gradient()) {
    return 0.0;
  }
  const ScalarField fd_only([&f](const Vec& x) { return f.value(x); });
  double worst = 0.0;
  for (const Vec& x : samples) {
    const Vec ga = f.gradient(x);
    const Vec gn = fd_only.gradient(x);
    const double rel = (ga - gn).norm() / (1.0 + ga.norm());
    worst = std::max(worst, rel);
  }
  return worst;
}

}  // namespace metriplectic
