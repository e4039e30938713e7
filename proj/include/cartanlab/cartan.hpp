#pragma once

#include <optional>
#include <vector>

#include "cartanlab/common.hpp"
#include "cartanlab/hamiltonian.hpp"
#include "cartanlab/lie_core.hpp"
#include "cartanlab/tolerances.hpp"

namespace cartanlab {

/// Record that the momentum map of the bundle's action was sampled and found
/// equivariant under the compact group to the stated residual.
struct EquivarianceCertificate {
  double max_cocycle = 0.0;
  int samples = 0;
};

/// Orbit model of a geometry over a Klein pair (a, g): points are ambient
/// group elements p, the frame anchors at chi(p) = p . base in projective
/// space, and the connection reads theta_p(pdot) = lambda(pdot p^{-1}) for a
/// linear twist lambda fixing g and acting on the i*m coordinates
/// (identity when not supplied).  The compact group acts on the left; the
/// stabilizer directions of the base act on the right.
struct CartanBundle {
  KleinPair klein;
  LinearAction action;
  ProjectivePoint base;
  std::optional<RealMatrix> lambda_m;  // twist on m-coordinates
  std::optional<EquivarianceCertificate> certificate;

  static CartanBundle orbit_model(LinearAction act, ProjectivePoint base);

  bool certified() const { return certificate.has_value(); }

  /// Samples the equivariance defect of the momentum map over random compact
  /// group elements and orbit points; stores a certificate on success and
  /// throws precondition_error if any sample exceeds tol.
  void certify(Rng& rng, int samples, double tol = tols::cocycle);

  GroupElement identity_point() const;
  GroupElement ambient_exp(const Matrix& xi) const;

  Matrix apply_lambda(const Matrix& xi) const;
  Matrix apply_lambda_inverse(const Matrix& xi) const;
};

/// chi(p): the orbit point below p.
ProjectivePoint chi(const CartanBundle& b, const GroupElement& p);

/// theta_p(pdot) for a tangent pdot at p (an ambient matrix with pdot p^{-1}
/// in a); the inverse hands back the tangent lambda^{-1}(xi) . p.
Matrix theta(const CartanBundle& b, const GroupElement& p, const Matrix& pdot);
Matrix theta_inverse(const CartanBundle& b, const GroupElement& p,
                     const Matrix& xi);

/// Velocity of t -> chi(p exp(t zeta)) at t = 0, in the chart at chi(p):
/// the right-translation flow used by the base stabilizer directions.
TangentVector orbit_velocity(const CartanBundle& b, const GroupElement& p,
                             const Matrix& zeta);

/// rho(xi, p) = T_p chi (theta_p^{-1}(xi)): the velocity of
/// t -> chi(exp(t lambda^{-1} xi) p), which for the identity twist is the
/// vector field generated by xi at the point chi(p).
TangentVector rho(const CartanBundle& b, const Matrix& xi,
                  const GroupElement& p);

/// Momentum of the bundle action at chi(p).
Matrix momentum_at(const CartanBundle& b, const GroupElement& p);

/// The second-order operator xi -> TJ(rho(xi, p)), computed by a central
/// difference of the momentum map along the chart curve (step h).
Matrix calabi_operator(const CartanBundle& b, const GroupElement& p,
                       const Matrix& xi, double h = 1e-5);

/// Residual of the symmetry identity
///   kappa_a(C_p xi, eta) - kappa_a(C_p eta, xi) + kappa_a(J(chi(p)), [xi, eta])
/// which vanishes when the momentum map is equivariant.
double a_equivariance_defect(const CartanBundle& b, const GroupElement& p,
                             const Matrix& xi, const Matrix& eta,
                             double h = 1e-5);

/// Geodesic point exp(t lambda^{-1}(xi)) p: the curve through p whose
/// connection coordinate is constantly xi.
GroupElement geodesic_point(const CartanBundle& b, const GroupElement& p,
                            const Matrix& xi, double t);

/// Kernel of xi -> rho(xi, p) over the real span of {basis_g, i basis_m}.
struct StabilizerBasis {
  std::vector<Matrix> basis;  // real basis, elements of a
  int real_dim = 0;
  int complex_dim = -1;  // real_dim / 2 when the kernel is i-stable, else -1
  double bracket_closure_residual = 0.0;
  double smallest_kept_sv = 0.0;  // diagnostics of the rank decision
  double largest_cut_sv = 0.0;

  bool contains(const Matrix& xi, double tol = 1e-8) const;
};

/// Numerical stabilizer algebra at p.  Throws ambiguity_error when the
/// singular-value split at the cutoff is not clean (ratio above gap).
StabilizerBasis stabilizer_basis(const CartanBundle& b, const GroupElement& p,
                                 double cutoff = tols::stabilizer_cutoff,
                                 double gap = tols::stabilizer_gap);

}  // namespace cartanlab
