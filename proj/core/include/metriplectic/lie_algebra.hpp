// Distributed under the Apache License, Version 2.0.
// See LICENSE for details.

#ifndef METRIPLECTIC_LIE_ALGEBRA_HPP
#define METRIPLECTIC_LIE_ALGEBRA_HPP

#include <functional>
#include <vector>

#include "metriplectic/brackets.hpp"
#include "metriplectic/scalar_field.hpp"
#include "metriplectic/tensor_field.hpp"
#include "metriplectic/types.hpp"

namespace metriplectic {

/// Finite-dimensional Lie algebra given by structure constants C^d_{ab} in
/// some basis, [e_a, e_b] = C^d_{ab} e_d. Construction rejects tables that
/// violate antisymmetry or the Jacobi identity (tolerance 1e-12).
class StructureConstants {
 public:
  /// entries laid out as c[(a*dim + b)*dim + d] = C^d_{ab}.
  StructureConstants(Index dim, std::vector<double> entries);

  double c(Index a, Index b, Index d) const {
    return c_[static_cast<std::size_t>((a * dim_ + b) * dim_ + d)];
  }
  Index dim() const { return dim_; }

  /// so(3) with the cross-product bracket: C^d_{ab} = epsilon_{abd}.
  static StructureConstants so3();
  /// All brackets vanish.
  static StructureConstants abelian(Index dim);

 private:
  Index dim_;
  std::vector<double> c_;
};

/// Constant positive semidefinite scalar product on the algebra.
class AlgebraInnerProduct {
 public:
  explicit AlgebraInnerProduct(Mat kg);

  const Mat& matrix() const { return kg_; }
  Index dim() const { return kg_.rows(); }

  static AlgebraInnerProduct identity(Index dim);
  static AlgebraInnerProduct zero(Index dim);

 private:
  Mat kg_;
};

/// l(xi) = xi' M xi / 2 with M symmetric positive definite (the inertia
/// operator). The Legendre transform mu = M xi is globally invertible.
class QuadraticLagrangian {
 public:
  explicit QuadraticLagrangian(Mat inertia);

  double value(const Vec& xi) const;
  Vec momentum(const Vec& xi) const { return inertia_ * xi; }
  Vec velocity(const Vec& mu) const { return llt_.solve(mu); }
  const Mat& inertia() const { return inertia_; }
  Index dim() const { return inertia_.rows(); }

 private:
  Mat inertia_;
  Eigen::LLT<Mat> llt_;
};

/// External force F: algebra -> dual. The second argument carries the state
/// mu for forces derived from a Casimir; user-supplied maps may ignore it.
struct ForceMap {
  enum class Provenance { UserSupplied, FromCasimir };

  Provenance provenance = Provenance::UserSupplied;
  std::function<Vec(const Vec& xi, const Vec& mu)> eval;

  static ForceMap zero(Index dim);
  static ForceMap user(std::function<Vec(const Vec&, const Vec&)> fn);
};

/// [xi, eta]^d = C^d_{ab} xi^a eta^b.
Vec bracket(const StructureConstants& sc, const Vec& xi, const Vec& eta);

/// (ad*_xi alpha)_b = C^d_{ab} xi^a alpha_d, the unique dual vector with
/// <ad*_xi alpha, eta> = <alpha, [xi, eta]> for all eta.
Vec coadjoint(const StructureConstants& sc, const Vec& xi, const Vec& alpha);

/// Linear Poisson tensor on the dual: Pi_ij(mu) = -C^d_{ij} mu_d. The sign
/// is the one for which H(p) = sum p_i^2 / (2 I_i) on so(3)* generates
/// Euler's rigid body equations dp_1/dt = (I_2-I_3)/(I_2 I_3) p_2 p_3, ...
TensorField lie_poisson_tensor(const StructureConstants& sc);

/// Right-hand side of the forced Euler-Poincare equations for the momentum
/// mu = M xi: components C^d_{ab} xi^a ((M xi)_d + F_d(xi, M xi)).
/// Contracting with xi gives zero, so the energy of the Lagrangian system
/// is preserved for any force of this shape.
Vec forced_ep_rhs(const QuadraticLagrangian& lag, const StructureConstants& sc,
                  const ForceMap& force, const Vec& xi);

/// Forced Lie-Poisson right-hand side
///   d mu/dt = ad*_{grad H(mu)} (mu + F(grad H(mu), mu)).
Vec forced_lie_poisson_rhs(const StructureConstants& sc, const ScalarField& h,
                           const ForceMap& force, const Vec& mu);

/// The dissipative force built from an algebra inner product and a Casimir:
/// F(xi, mu) = kg [xi, grad C(mu)]. Along the forced Lie-Poisson flow this
/// makes dC/dt = kg([grad H, grad C], [grad H, grad C]) >= 0.
ForceMap force_from_casimir(const StructureConstants& sc,
                            const AlgebraInnerProduct& kg,
                            const ScalarField& casimir);

/// dC/dt = <F(grad H(mu), mu), [grad H(mu), grad C(mu)]> along the forced
/// Lie-Poisson flow; the conservative part contributes nothing because C is
/// a Casimir.
double casimir_rate(const StructureConstants& sc, const ScalarField& h,
                    const ForceMap& force, const ScalarField& c,
                    const Vec& mu);

/// Symmetric PSD field K~ on the dual with K~(mu) grad C(mu) equal to the
/// force term of the forced Lie-Poisson equations:
/// K~_{ab} = [grad H, e_a]' kg [grad H, e_b]. Bridges the forced
/// formulation to the dissipative-bracket form of the same dynamics.
TensorField induced_symmetric_tensor(const StructureConstants& sc,
                                     const AlgebraInnerProduct& kg,
                                     const ScalarField& h,
                                     const ScalarField& c);

struct So3Preset {
  StructureConstants algebra;
  QuadraticLagrangian lagrangian;
  ScalarField hamiltonian;  // p -> sum p_i^2 / (2 I_i)
  ScalarField entropy;      // p -> |p|^2 / 2
};

/// Rigid body on so(3)*: cross-product structure constants, diagonal
/// inertia, kinetic energy Hamiltonian and the momentum-norm Casimir as
/// entropy. Rejects nonpositive inertia.
So3Preset so3_preset(const Vec& inertia);

/// Kinetic energy p -> sum p_i^2 / (2 I_i) with analytic gradient.
ScalarField rigid_body_energy(const Vec& inertia);

/// Complete metriplectic system for the relaxed rigid body: Lie-Poisson
/// tensor, Euclidean cometric, kinetic energy, momentum-norm entropy.
/// A different entropy (any Casimir, e.g. |p|^4 / 4) may be substituted.
MetriplecticSystem rigid_body_system(const Vec& inertia);
MetriplecticSystem rigid_body_system_with_entropy(const Vec& inertia,
                                                  ScalarField entropy);

}  // namespace metriplectic

#endif  // METRIPLECTIC_LIE_ALGEBRA_HPP
