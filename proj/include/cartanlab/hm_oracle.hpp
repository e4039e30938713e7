#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "cartanlab/common.hpp"

namespace cartanlab {

enum class StabilityLabel { stable, semistable, unstable };

std::string to_string(StabilityLabel label);

/// Exact stability classification for a diagonal torus action with integer
/// weight rows W (n x k) at a point supported on the given coordinates:
/// stable iff 0 lies in the interior of the convex hull of the active weight
/// rows, semistable iff it lies in the hull, unstable otherwise.  Decided in
/// exact integer arithmetic (fraction-free elimination), so the answer is a
/// certificate, not an approximation.
struct TorusStabilityCertificate {
  StabilityLabel label = StabilityLabel::stable;
  // A minimizing ray direction: destabilizing when unstable, a touching
  // supporting normal when strictly semistable, empty when stable.
  Eigen::VectorXi witness;
  // min over candidate rays of the normalized asymptotic slope.
  double min_slope = 0.0;
  // Candidate ray directions examined (integer, unnormalized).
  std::vector<Eigen::VectorXi> candidates;
};

TorusStabilityCertificate classify_torus_weights(
    const Eigen::MatrixXi& weights, const std::vector<bool>& support);

/// Asymptotic slope of the Kempf-Ness function of the weight system along
/// the ray direction s: max over active rows of <W_j, s>.
double weight_slope(const Eigen::MatrixXi& weights,
                    const std::vector<bool>& support, const RealVector& s);

/// Coordinates of v that carry mass above the threshold.
std::vector<bool> support_mask(const Vector& v, double threshold = 1e-14);

/// Exact determinant of an integer matrix (Bareiss fraction-free method).
std::int64_t int_determinant(const Eigen::Matrix<std::int64_t, Eigen::Dynamic,
                                                 Eigen::Dynamic>& m);

/// Integer basis of the nullspace of an integer matrix (each column is an
/// exact nullspace vector with integer entries).
Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> int_nullspace(
    const Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>& m);

}  // namespace cartanlab
