#pragma once

#include <functional>
#include <vector>

#include "cartanlab/common.hpp"

namespace cartanlab {

/// Finite-difference weights for the m-th derivative at evaluation point z
/// from arbitrary nodes x (Fornberg's recursion).  Row m of the result holds
/// the weights; rows 0..m are computed.
RealMatrix fd_weights(double z, const std::vector<double>& x, int m);

/// Derivative of uniformly sampled data at every node, using centered
/// stencils of the given accuracy order in the interior and one-sided
/// stencils of the same order at the edges.  `h` is the grid spacing.
RealVector fd_derivative(const RealVector& f, double h, int deriv, int order);

/// Composite Simpson on a uniform grid (requires an even interval count).
double simpson_uniform(const RealVector& f, double h);

/// Composite trapezoid on a uniform grid.
double trapezoid_uniform(const RealVector& f, double h);

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 40);

/// Local 4-point Lagrange interpolation of uniformly sampled data
/// (cubic, O(h^4) for smooth data).  x0 is the coordinate of sample 0.
double interp_cubic(const RealVector& f, double x0, double h, double x);

}  // namespace cartanlab
