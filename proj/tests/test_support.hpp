// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#ifndef METRIPLECTIC_TEST_SUPPORT_HPP
#define METRIPLECTIC_TEST_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "metriplectic/lie_algebra.hpp"
#include "metriplectic/scalar_field.hpp"
#include "metriplectic/types.hpp"

namespace testsupport {

using metriplectic::Index;
using metriplectic::Mat;
using metriplectic::ScalarField;
using metriplectic::Vec;

/// x -> x[i] with unit gradient.
inline ScalarField coordinate(Index i) {
  return ScalarField(
      [i](const Vec& x) { return x[i]; },
      [i](const Vec& x) { return Vec(Vec::Unit(x.size(), i)); });
}

/// Closed form of the relaxed rigid body equations: the conservative Euler
/// part plus the entropy-producing force terms, componentwise.
inline Vec relaxed_rigid_body_rhs(const Vec& inertia, const Vec& p) {
  const double i1 = inertia[0];
  const double i2 = inertia[1];
  const double i3 = inertia[2];
  Vec out(3);
  out[0] = (i2 - i3) / (i2 * i3) * p[1] * p[2] +
           (1.0 / (i2 * i2) - 1.0 / (i1 * i2)) * p[0] * p[1] * p[1] +
           (1.0 / (i3 * i3) - 1.0 / (i1 * i3)) * p[0] * p[2] * p[2];
  out[1] = (i3 - i1) / (i1 * i3) * p[0] * p[2] +
           (1.0 / (i1 * i1) - 1.0 / (i1 * i2)) * p[1] * p[0] * p[0] +
           (1.0 / (i3 * i3) - 1.0 / (i2 * i3)) * p[1] * p[2] * p[2];
  out[2] = (i1 - i2) / (i1 * i2) * p[0] * p[1] +
           (1.0 / (i1 * i1) - 1.0 / (i1 * i3)) * p[2] * p[0] * p[0] +
           (1.0 / (i2 * i2) - 1.0 / (i2 * i3)) * p[1] * p[1] * p[2];
  return out;
}

/// Conservative Euler part only.
inline Vec euler_rhs(const Vec& inertia, const Vec& p) {
  const double i1 = inertia[0];
  const double i2 = inertia[1];
  const double i3 = inertia[2];
  Vec out(3);
  out[0] = (i2 - i3) / (i2 * i3) * p[1] * p[2];
  out[1] = (i3 - i1) / (i1 * i3) * p[0] * p[2];
  out[2] = (i1 - i2) / (i1 * i2) * p[0] * p[1];
  return out;
}

/// Rigid body kinetic energy plus a quartic perturbation; smooth and
/// non-quadratic, with analytic gradient.
inline ScalarField quartic_perturbation(const Vec& inertia,
                                        double strength = 0.1) {
  const Vec inv = inertia.cwiseInverse();
  return ScalarField(
      [inv, strength](const Vec& p) {
        const double n2 = p.squaredNorm();
        return 0.5 * p.dot(inv.cwiseProduct(p)) + 0.25 * strength * n2 * n2;
      },
      [inv, strength](const Vec& p) {
        return Vec(inv.cwiseProduct(p) + strength * p.squaredNorm() * p);
      });
}

/// H(x) = x_1 x_2 x_3 on R^3.
inline ScalarField coupled_product() {
  return ScalarField(
      [](const Vec& x) { return x[0] * x[1] * x[2]; },
      [](const Vec& x) {
        Vec g(3);
        g[0] = x[1] * x[2];
        g[1] = x[0] * x[2];
        g[2] = x[0] * x[1];
        return g;
      });
}

inline std::vector<std::pair<Vec, Vec>> sample_pairs(Index dim, int count,
                                                     std::uint64_t seed) {
  const std::vector<Vec> states =
      metriplectic::sample_states(dim, 2 * count, seed);
  std::vector<std::pair<Vec, Vec>> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    pairs.emplace_back(states[static_cast<std::size_t>(2 * k)],
                       states[static_cast<std::size_t>(2 * k + 1)]);
  }
  return pairs;
}

inline Mat random_spd(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Mat r(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      r(i, j) = dist(rng);
    }
  }
  return Mat(r * r.transpose() +
             static_cast<double>(dim) * Mat::Identity(dim, dim));
}

inline Mat random_psd(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Mat r(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      r(i, j) = dist(rng);
    }
  }
  return Mat(r * r.transpose());
}

}  // namespace testsupport

#endif  // METRIPLECTIC_TEST_SUPPORT_HPP
