#pragma once

#include <Eigen/Dense>
#include <complex>

namespace cartanlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Frobenius norm shorthand used by residual checks.
inline double fnorm(const Matrix& m) { return m.norm(); }

inline bool approx_zero(double x, double tol) { return std::abs(x) <= tol; }

}  // namespace cartanlab
