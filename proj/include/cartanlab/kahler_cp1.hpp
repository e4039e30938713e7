#pragma once

#include <vector>

#include "cartanlab/common.hpp"

namespace cartanlab {

/// Rotation-invariant metric on the projective line in moment coordinates
/// x in [-1, 1].  The full convex potential is u(x) = u_ref(x) + s(x) with
/// u_ref(x) = ((1+x)log(1+x) + (1-x)log(1-x)) / 2
/// and s a smooth correction sampled on a uniform grid.  The boundary weight
/// w(x) = (1 - x^2) u''(x) = 1 + (1 - x^2) s''(x) tends to 1 at the interval
/// ends for every smooth correction, so strict positivity of w (convexity of
/// u) is the nontrivial membership condition.
struct SymplecticPotential1D {
  RealVector s;  // n+1 node values of the correction

  static SymplecticPotential1D reference(int n);
  static SymplecticPotential1D from_correction(RealVector values);

  int segments() const { return static_cast<int>(s.size()) - 1; }
  double h() const { return 2.0 / segments(); }
  double x(int i) const { return -1.0 + i * h(); }

  /// Correction derivative node arrays by finite differences of the stated
  /// accuracy order (one-sided closures at the edges).
  RealVector d1(int order = 4) const;
  RealVector d2(int order = 4) const;

  /// w(x_i) = 1 + (1 - x_i^2) s''(x_i); equals 1 at the end nodes.
  RealVector boundary_weight() const;

  /// Throws domain_error when the grid is malformed or convexity fails.
  void validate() const;
};

/// Pointwise evaluator between nodes: local cubic interpolation of the node
/// values and of the derivative arrays built at the requested stencil order.
class PotentialEval {
 public:
  explicit PotentialEval(const SymplecticPotential1D& u, int order = 4);

  double s(double x) const;
  double s1(double x) const;
  double s2(double x) const;
  double u(double x) const;   // full potential; exact log limits at |x| = 1
  double u1(double x) const;  // u'(x) = atanh(x) + s'(x)
  double w(double x) const;   // boundary weight

  /// The unique x with u'(x) = y (u is strictly convex), saturating to +-1
  /// when y lies beyond the representable slope range.
  double inverse_slope(double y) const;

  /// Dual potential value phi(y) = x y - u(x) at x = inverse_slope(y).
  double dual(double y) const;

  /// Second derivative of the dual potential, (1 - x^2)/w at x = x(y).
  double dual_second(double y) const;

 private:
  const SymplecticPotential1D* pot_;
  RealVector s1_, s2_;
};

/// Scalar curvature at the nodes: S = -((1 - x^2)/w)'' by 4th-order
/// differences with one-sided closures.  Constant 2 for the reference.
RealVector scalar_curvature(const SymplecticPotential1D& u);

/// Flat-measure average of the scalar curvature over [-1, 1]; the total
/// integral is topological, so this is 2 for every admissible potential.
double average_scalar(const SymplecticPotential1D& u);

/// Character integral against the rotation's moment function h(x) = x:
/// F = -Int (S - S0) x dx.  Vanishes identically on this geometry.
double futaki_cp1(const SymplecticPotential1D& u);

/// Energy of a path of potentials sampled at uniform times in [0, 1]:
/// E = Int dt Int (du/dt)(S_t - S0) dx, with 4th-order time stencils and
/// Simpson quadrature in both variables.  Path-independent given fixed
/// endpoints; zero when the path starts and ends at the reference.
double k_energy_kempf1(const std::vector<SymplecticPotential1D>& path);

/// Closed-form endpoint value of the same functional:
/// E = Int (w - 1 - log w) dx, nonnegative and zero exactly at the round
/// metric.  Its first variation is Int (delta s)(S - S0) dx.
double k_energy_closed(const SymplecticPotential1D& u);

/// Endpoint energy split into entropy, volume, and Ricci quadratures.
/// value = entropy + volume_energy + ricci_energy; the coefficients are
/// calibrated to the flat moment measure and the curvature normalization
/// S = -(1/u'')'', making value match k_energy_kempf1.
struct KEnergyValue {
  double value = 0.0;
  double entropy = 0.0;
  double volume_energy = 0.0;
  double ricci_energy = 0.0;
};

KEnergyValue k_energy_chentian(const SymplecticPotential1D& u,
                               double y_halfwidth = 20.0, int y_samples = 4000);

/// Segment between two potentials at parameter t in [0, 1]; linear in the
/// correction, which is the distinguished path for this geometry.
SymplecticPotential1D toric_geodesic(const SymplecticPotential1D& u0,
                                     const SymplecticPotential1D& u1,
                                     double t);

/// Max norm of the second-order defect of the dual-potential path of the
/// segment from u0 to u1: |d2phi/dt2 - (d(dphi/dt)/dy)^2 / phi''| sampled at
/// interior probe times and dual positions.  Decays at second order in the
/// grid spacing for smooth endpoint corrections.
double geodesic_residual(const SymplecticPotential1D& u0,
                         const SymplecticPotential1D& u1, int probes = 25,
                         double y_halfwidth = 1.2);

/// Dual (radial) potential tabulated on a uniform grid of the slope
/// variable, with the primal coordinate x = phi'(y) stored alongside.
struct KahlerPotential1D {
  RealVector y;
  RealVector phi;
  RealVector slope;  // x(y) = phi'(y), strictly increasing in (-1, 1)
};

KahlerPotential1D kahler_potential(const SymplecticPotential1D& u,
                                   double y_halfwidth = 6.0,
                                   double y_step = 0.005);

/// Max over interior nodes of |u(x_i) - (x_i y* - phi(y*))| where y* inverts
/// the tabulated slope; the two Legendre transforms must cancel.
double legendre_roundtrip(const SymplecticPotential1D& u,
                          const KahlerPotential1D& dual);

struct DescentRow {
  int iter = 0;
  double energy = 0.0;
  double sup_defect = 0.0;
};

struct DescentResult {
  SymplecticPotential1D potential;
  std::vector<DescentRow> trajectory;
  bool converged = false;
};

/// Damped Newton descent of the endpoint energy: solve the reference-metric
/// Hessian model ((1-x^2)^2 d^2/dx^2 .)'' for the update direction, with an
/// Armijo line search on the closed-form energy and projection of the
/// iterates onto the affine-free gauge.  Stops when |S - S0|_sup falls
/// below sup_tol.
DescentResult k_energy_descent(const SymplecticPotential1D& u0,
                               double step = 1.0, int iters = 500,
                               double sup_tol = 1e-3);

}  // namespace cartanlab
