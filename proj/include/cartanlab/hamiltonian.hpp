#pragma once

#include <functional>
#include <optional>

#include "cartanlab/common.hpp"
#include "cartanlab/lie_core.hpp"

namespace cartanlab {

/// A point of P(C^n), stored as a unit vector whose first nonzero entry is
/// real and positive, so equal points have equal representatives.
struct ProjectivePoint {
  Vector v;

  static ProjectivePoint from(Vector raw);
  int dim() const { return static_cast<int>(v.size()); }
};

/// Distance between the lines spanned by two points (phase-free).
double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b);

/// Tangent vector at a projective point: a chart vector orthogonal to the
/// representative.
struct TangentVector {
  ProjectivePoint base;
  Vector w;

  static TangentVector at(ProjectivePoint base, Vector w);
};

/// Momentum value in g (identified with g* through kappa).
struct MomentumCovector {
  Matrix value;
};

/// A unitary linear action of a Klein pair on C^n: the algebra map extends
/// complex-linearly to the ambient algebra, the group map covers both the
/// compact group and its complexification.
struct LinearAction {
  KleinPair klein;
  int dim_v = 0;
  std::function<Matrix(const Matrix&)> alg;
  std::function<Matrix(const Matrix&)> grp;
  std::optional<Eigen::MatrixXi> weights;  // rows: coordinate weights (torus)

  /// The defining representation of the pair on C^n.
  static LinearAction identity_on(KleinPair pair);

  /// A k-torus acting on C^n through an integer weight matrix W (n x k):
  /// coordinate j transforms with character prod_l a_l^{W(j,l)}.
  static LinearAction torus_weights(const Eigen::MatrixXi& W);
};

/// Checks that alg is a Lie algebra homomorphism on basis brackets and maps
/// the compact algebra to anti-Hermitian matrices.  Throws config_error.
void validate(const LinearAction& act);

/// Induced tangent action: w = rep(xi) v - <v, rep(xi) v> v at [v].
TangentVector inf_action(const LinearAction& act, const Matrix& xi,
                         const ProjectivePoint& m);

/// Fubini-Study symplectic form, scaled so the momentum pairing below holds:
/// omega(X, Y) = 2 Im <X, Y>.
double symplectic_form(const TangentVector& x, const TangentVector& y);

/// The compatible complex structure X -> iX.
TangentVector complex_structure(const TangentVector& x);

/// Riemannian norm^2 of a tangent vector in the metric omega(., j.).
double metric_norm2(const TangentVector& x);

/// Momentum map of the action at [v]: the g-element J with
/// kappa(J, xi) = Im <v, rep(xi) v> for every xi in g.  This makes the
/// defining relation omega(xi.m, X) + kappa(dJ(X), xi) = 0 hold exactly,
/// and for torus weights gives kappa(J, generator) = sum_j lambda_j |v_j|^2.
MomentumCovector momentum(const LinearAction& act, const ProjectivePoint& m);

/// Convenience pairing kappa(J(m), xi).
double momentum_pairing(const LinearAction& act, const ProjectivePoint& m,
                        const Matrix& xi);

/// Residual of the defining relation at (m, xi, X), with dJ evaluated by a
/// central difference of step h along the chart curve through m with
/// velocity X.
double momentum_defect(const LinearAction& act, const ProjectivePoint& m,
                       const Matrix& xi, const TangentVector& X,
                       double h = 1e-5);

/// Equivariance defect sigma(g) = J(g.m) - Ad*_g J(m) as a g-element.
Matrix cocycle_sigma(const LinearAction& act, const GroupElement& g,
                     const ProjectivePoint& m);

/// Directional derivative of J at m along X (central difference, step h).
Matrix momentum_derivative(const LinearAction& act, const ProjectivePoint& m,
                           const Vector& w, double h = 1e-5);

/// Group orbit point [rep(a) v].
ProjectivePoint act_point(const LinearAction& act, const Matrix& a,
                          const ProjectivePoint& m);

/// Tangent of the projective curve t -> [u + t udot] expressed in the chart
/// of the normalized representative of [u].  Handles both the norm and the
/// phase normalization, so the result composes correctly with momentum
/// derivatives taken at ProjectivePoint::from(u).
TangentVector projective_velocity(const Vector& u, const Vector& udot);

}  // namespace cartanlab
