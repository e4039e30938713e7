#pragma once

#include <iosfwd>
#include <vector>

#include "cartanlab/common.hpp"

namespace cartanlab {

/// Probability density on the circle, sampled at N uniform nodes of
/// [0, 2pi).  Periodic trapezoidal quadrature (node sum times spacing) must
/// give total mass 1.
struct DensityOnCircle {
  RealVector rho;

  static DensityOnCircle uniform(int n);
  /// Validating constructor: positive nodes, mass 1 within 1e-10.
  static DensityOnCircle from_values(RealVector values);
  /// Rescale positive values to unit mass, then validate.
  static DensityOnCircle normalize(RealVector values);

  int size() const { return static_cast<int>(rho.size()); }
  double spacing() const { return 2.0 * kPi / size(); }
  double node(int j) const { return j * spacing(); }
  double mass() const { return rho.sum() * spacing(); }
  void validate() const;
};

/// Mean-zero function on the circle grid, the generator of a gradient flow.
struct PotentialFunction {
  RealVector f;

  static PotentialFunction from_values(RealVector values);
  /// Subtract the node mean, then validate.
  static PotentialFunction normalize(RealVector values);
  static PotentialFunction zero(int n);

  int size() const { return static_cast<int>(f.size()); }
  double spacing() const { return 2.0 * kPi / size(); }
  double node(int j) const { return j * spacing(); }
  void validate() const;
};

/// Result of the weighted splitting of a periodic vector field: the
/// divergence-free part of a field on the circle is a constant, and the rest
/// is the pullback of a gradient through the transport map of the density.
struct HelmholtzParts {
  double constant = 0.0;
  PotentialFunction potential;
};

/// Split the sampled field as
///   X(x) = constant + 2 pi rho(phi(x)) f'(phi(x)),
/// where phi is the transport map pushing the uniform probability form to
/// rho (phi_inverse(y) = 2 pi Int_0^y rho).  All derivatives, interpolation
/// and inversion are spectral, so smooth inputs reconstruct far below the
/// acceptance tolerance.  The field and density must share one grid.
HelmholtzParts helmholtz_1d(const RealVector& field, const DensityOnCircle& rho);

/// Max node deviation |X - constant - 2 pi rho(phi(x)) f'(phi(x))| of a
/// proposed splitting, evaluated with the same spectral machinery.
double helmholtz_reconstruction_residual(const RealVector& field,
                                         const DensityOnCircle& rho,
                                         const HelmholtzParts& parts);

/// Pushforward of rho0 under the time-t flow of grad f, computed along
/// characteristics: integrate x' = -f'(x) and the Jacobian J' = -f''(x) J
/// backward from every node with classical fourth-order steps of size at
/// most `step`, then rho_t(y) = rho0(x(y)) J(y).  Mass is conserved by the
/// change-of-variables structure; the result is validated.
DensityOnCircle cartan_geodesic_density(const DensityOnCircle& rho0,
                                        const PotentialFunction& f, double t,
                                        double step = 1e-3);

/// Densities at times 0, dt, ..., steps*dt along the same flow, advancing
/// one set of characteristics incrementally.
std::vector<DensityOnCircle> geodesic_trajectory(const DensityOnCircle& rho0,
                                                 const PotentialFunction& f,
                                                 double dt, int steps,
                                                 double step = 1e-3);

/// Max interior-node residual of d(rho)/dt + d(rho f')/dx along a uniformly
/// time-sampled trajectory, with second-order central differences in both
/// variables.  Needs at least three time samples.
double continuity_residual(const std::vector<DensityOnCircle>& trajectory,
                           const PotentialFunction& f, double dt);

/// CSV rows "t,node,rho" for a trajectory on a uniform time grid.
void write_trajectory_csv(std::ostream& out,
                          const std::vector<DensityOnCircle>& trajectory,
                          double dt);

}  // namespace cartanlab
