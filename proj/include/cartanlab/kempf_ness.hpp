#pragma once

#include <vector>

#include "cartanlab/cartan.hpp"
#include "cartanlab/hm_oracle.hpp"
#include "cartanlab/rng.hpp"
#include "cartanlab/tolerances.hpp"

namespace cartanlab {

/// Energy of a group element: log of the representation-space norm of the
/// transported base vector.  The base vector is stored normalized, so the
/// energy vanishes at the identity and on the compact subgroup.
double kn_energy(const CartanBundle& b, const GroupElement& a);

/// Closed-form first derivative of the energy along t -> exp(t zeta) a at
/// t = 0: the momentum at the orbit point paired against zeta through the
/// duality pairing.
double kn_rate(const CartanBundle& b, const GroupElement& a,
               const Matrix& zeta);

/// |central difference of the energy - closed-form rate| at (a, zeta).
double kn_derivative_defect(const CartanBundle& b, const GroupElement& a,
                            const Matrix& zeta, double h = 1e-5);

/// Energy profile along the geodesic with connection coordinate xi through
/// `start` (curve t -> exp(t lambda^{-1} xi) start).  The energy is reported
/// twice: evaluated directly and integrated from the closed-form rate; the
/// two must agree because the rate is an exact derivative.
struct KnProfile {
  RealVector t;
  RealVector energy;             // direct evaluation
  RealVector energy_integrated;  // energy[0] + quadrature of the rate
  RealVector rate;               // closed-form first derivative
  RealVector curvature;          // central difference of the rate
  double max_integration_gap = 0.0;
};

KnProfile kn_profile(const CartanBundle& b, const GroupElement& start,
                     const Matrix& xi, double t0, double t1, int samples,
                     double delta = 1e-5);

/// Convexity check along a geodesic whose generator lies in the positive
/// slice i*m: the second derivative of the energy must be nonnegative, equal
/// to the squared metric speed of the orbit sweep, and equal to the pairing
/// of the momentum derivative against the generator.
struct ConvexityReport {
  double min_curvature = 0.0;  // smallest second derivative encountered
  double max_norm_gap = 0.0;   // vs squared orbit speed, relative
  double max_pairing_gap = 0.0;  // vs momentum-derivative pairing, relative
};

ConvexityReport kn_convexity(const CartanBundle& b, const GroupElement& start,
                             const Matrix& xi, double t0, double t1,
                             int samples, double delta = 1e-5);

/// One straight leg of a piecewise path: t -> exp(t generator) p.
struct PathLeg {
  Matrix generator;
  double duration = 1.0;
};

/// Integral of the momentum pairing (the energy one-form) along the
/// concatenated legs.  Fills *endpoint with the final group element when
/// given.
double path_energy_integral(const CartanBundle& b, const GroupElement& start,
                            const std::vector<PathLeg>& legs,
                            double quad_tol = 1e-11,
                            GroupElement* endpoint = nullptr);

/// Absolute closure defect of the energy integral around a triangle: two
/// exponential legs from the identity followed by the polar leg back to the
/// unitary factor of the endpoint.  The loop closes in the base, so the
/// exact integral vanishes; the returned value is pure numerical error.
double triangle_loop_defect(const CartanBundle& b, const Matrix& xi1,
                            const Matrix& xi2, double quad_tol = 1e-11);

/// Asymptotic slope of the energy along the geodesic ray with connection
/// coordinate xi: the limit of the rate, located by repeated time doubling
/// with renormalized representation-space squaring so no overflow occurs.
struct SlopeResult {
  double slope = 0.0;
  int doublings = 0;
  double plateau_gap = 0.0;  // last successive difference
};

SlopeResult kn_slope(const CartanBundle& b, const GroupElement& start,
                     const Matrix& xi, int max_doublings = 60,
                     double plateau_tol = tols::slope_flatness);

/// Sign-of-slope classification over a family of ray directions, each
/// normalized to unit Frobenius norm before the slope is measured.
struct StabilityReport {
  StabilityLabel label = StabilityLabel::stable;
  double min_slope = 0.0;
  Matrix worst_direction;
  int directions_checked = 0;
};

StabilityReport classify_stability(const CartanBundle& b,
                                   const GroupElement& start,
                                   const std::vector<Matrix>& directions,
                                   double zero_tol = 1e-7,
                                   int max_doublings = 60,
                                   double plateau_tol = tols::slope_flatness);

/// Diagonal ray direction of a torus model from real exponents.
Matrix torus_direction(const RealVector& s);

/// All nonzero primitive integer vectors with entries in [-radius, radius].
std::vector<Eigen::VectorXi> integer_directions(int dim, int radius);

/// Steepest descent of the energy over the positive slice directions i*m
/// (left updates a <- exp(-s grad) a with Armijo backtracking).  Converges
/// to a momentum zero when one exists; diverging norms or exhausted
/// iterations raise convergence_error.
struct MomentumZeroResult {
  GroupElement point;
  double residual = 0.0;  // gradient norm in the pairing metric
  int iterations = 0;
};

MomentumZeroResult find_momentum_zero(const CartanBundle& b,
                                      const GroupElement& start,
                                      double tol = tols::zero_residual,
                                      int max_iterations = 20000);

/// Left-invariant quotient coordinate of a group element (conjugate
/// transpose times the element); two elements agree modulo the compact
/// subgroup exactly when their coordinates agree.
Matrix quotient_invariant(const GroupElement& a);

/// Normalized distance between the stabilizer orbits of two momentum zeros:
/// minimizes |b(p0) - b(p1 exp(Z))|_F / (1 + |b(p0)|_F) over Z in the span
/// of the given base-stabilizer directions (coordinate descent with random
/// restarts).
double stabilizer_orbit_gap(const GroupElement& p0, const GroupElement& p1,
                            const std::vector<Matrix>& stabilizer_dirs,
                            Rng& rng, int restarts = 50);

}  // namespace cartanlab
