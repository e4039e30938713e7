#include "cartanlab/futaki.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cartanlab/errors.hpp"

namespace cartanlab {

double futaki_character(const CartanBundle& b, const GroupElement& p,
                        const Matrix& zeta) {
  const Matrix mu = momentum_at(b, p);
  const Matrix reading = b.apply_lambda(adjoint(p.a, zeta));
  return kappa_a(b.klein, mu, reading);
}

ConstancyReport futaki_constancy(const CartanBundle& b, const Matrix& zeta,
                                 Rng& rng, int samples, double point_radius) {
  if (samples < 2) throw precondition_error("need at least two sample points");
  if (!b.certified())
    throw precondition_error(
        "constancy requires an equivariance certificate; certify the bundle "
        "first");
  if (b.lambda_m.has_value() &&
      !b.lambda_m->isApprox(
          RealMatrix::Identity(b.lambda_m->rows(), b.lambda_m->cols()), 1e-14))
    throw precondition_error("constancy requires the untwisted connection");
  const StabilizerBasis stab = stabilizer_basis(b, b.identity_point());
  if (!stab.contains(zeta))
    throw precondition_error(
        "direction does not stabilize the base point, so the character may "
        "vary");

  ConstancyReport report;
  report.samples = samples;
  double sum = 0.0;
  double lo = 0.0, hi = 0.0;
  for (int s = 0; s < samples; ++s) {
    GroupElement p = b.identity_point();
    if (s > 0) {
      const Matrix a = matrix_exp(b.klein.random_ambient(rng, point_radius)) *
                       matrix_exp(b.klein.random_ambient(rng, point_radius));
      p = GroupElement{a, b.klein.ambient_group_tag};
    }
    const double value = futaki_character(b, p, zeta);
    sum += value;
    if (s == 0) {
      lo = hi = value;
    } else {
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
  }
  report.value = sum / samples;
  report.spread = hi - lo;
  report.rel_spread = report.spread / (1.0 + std::abs(report.value));
  return report;
}

double character_defect(const CartanBundle& b, const GroupElement& p,
                        const Matrix& zeta, const Matrix& eta) {
  return std::abs(futaki_character(b, p, bracket(zeta, eta)));
}

double xi_form(const KleinPair& pair, const Matrix& alpha, const Matrix& beta) {
  return kappa(pair.decompose(alpha).second, pair.decompose(beta).second);
}

double xi_form_transport_spread(const CartanBundle& b, const Matrix& alpha,
                                const Matrix& beta, Rng& rng, int samples,
                                double radius) {
  const double base = xi_form(b.klein, alpha, beta);
  double spread = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Matrix a = matrix_exp(b.klein.random_ambient(rng, radius));
    const double moved = xi_form(b.klein, adjoint(a, alpha), adjoint(a, beta));
    spread = std::max(spread, std::abs(moved - base));
  }
  return spread;
}

Matrix extremal_element(const CartanBundle& b, const GroupElement& p,
                        const std::vector<Matrix>& directions,
                        double null_cutoff) {
  const int n = static_cast<int>(directions.size());
  if (n == 0) throw precondition_error("need at least one direction");

  RealMatrix gram(n, n);
  RealVector character(n);
  for (int i = 0; i < n; ++i) {
    character(i) = futaki_character(b, p, directions[i]);
    for (int j = 0; j <= i; ++j) {
      gram(i, j) = xi_form(b.klein, directions[i], directions[j]);
      gram(j, i) = gram(i, j);
    }
  }

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
  if (es.info() != Eigen::Success)
    throw degeneracy_error("eigensolve of the form's Gram matrix failed");
  const RealVector evals = es.eigenvalues();
  const RealMatrix evecs = es.eigenvectors();
  const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  const double mass_tol = null_cutoff * (1.0 + character.norm());

  RealVector coeffs = RealVector::Zero(n);
  for (int k = 0; k < n; ++k) {
    const double component = evecs.col(k).dot(character);
    if (std::abs(evals(k)) <= null_cutoff * scale) {
      if (std::abs(component) > mass_tol)
        throw degeneracy_error(
            "character has mass along a degenerate direction of the form");
      continue;
    }
    coeffs += (component / evals(k)) * evecs.col(k);
  }

  Matrix zeta = Matrix::Zero(directions[0].rows(), directions[0].cols());
  for (int i = 0; i < n; ++i) zeta += coeffs(i) * directions[i];
  return Complex(0.0, 1.0) * b.klein.decompose(zeta).second;
}

}  // namespace cartanlab
