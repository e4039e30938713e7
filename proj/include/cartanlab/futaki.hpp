#pragma once

#include <vector>

#include "cartanlab/cartan.hpp"
#include "cartanlab/rng.hpp"
#include "cartanlab/tolerances.hpp"

namespace cartanlab {

/// Character value of an ambient direction zeta at the bundle point p: the
/// momentum at chi(p) paired against the connection reading of the
/// right-translation field, theta_p(p zeta) = lambda(p zeta p^{-1}).
double futaki_character(const CartanBundle& b, const GroupElement& p,
                        const Matrix& zeta);

/// Spread of the character over sampled bundle points.  The value is
/// point-independent when the momentum map is equivariant, the connection is
/// untwisted, and zeta stabilizes the base point; those preconditions are
/// checked (certificate present, identity twist, stabilizer membership) and
/// violations raise precondition_error.
struct ConstancyReport {
  double value = 0.0;   // mean over samples
  double spread = 0.0;  // max - min
  double rel_spread = 0.0;  // spread / (1 + |mean|)
  int samples = 0;
};

ConstancyReport futaki_constancy(const CartanBundle& b, const Matrix& zeta,
                                 Rng& rng, int samples = 50,
                                 double point_radius = 0.8);

/// |character of [zeta, eta] at p|: vanishes when the character is a Lie
/// algebra homomorphism on the stabilizer.
double character_defect(const CartanBundle& b, const GroupElement& p,
                        const Matrix& zeta, const Matrix& eta);

/// Bilinear form on the ambient algebra induced by the pairing on the
/// positive-slice parts: Xi(alpha, beta) = kappa(alpha_2, beta_2) where
/// alpha = alpha_1 + i alpha_2.  Positive semidefinite with kernel g.
double xi_form(const KleinPair& pair, const Matrix& alpha, const Matrix& beta);

/// Max deviation of Xi under conjugation transport by sampled ambient group
/// elements: |Xi(Ad_a alpha, Ad_a beta) - Xi(alpha, beta)|.  Zero for
/// abelian pairs; genuinely nonzero for noncommutative ones.
double xi_form_transport_spread(const CartanBundle& b, const Matrix& alpha,
                                const Matrix& beta, Rng& rng, int samples = 20,
                                double radius = 0.8);

/// The element zeta of span(directions) representing the character through
/// the form: Xi(zeta, d_i) = character(d_i) for every direction, solved on
/// the nondegenerate eigenblock of the Gram matrix of Xi.  Directions along
/// which the form degenerates must carry no character mass; otherwise the
/// character is not representable and degeneracy_error is raised.  The
/// returned representative is canonicalized to its positive-slice part
/// (i times the second decomposition component), which the form and the
/// defining equations cannot distinguish from any other representative.
Matrix extremal_element(const CartanBundle& b, const GroupElement& p,
                        const std::vector<Matrix>& directions,
                        double null_cutoff = 1e-10);

}  // namespace cartanlab
