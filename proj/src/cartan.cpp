#include "cartanlab/cartan.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <utility>

#include "cartanlab/errors.hpp"

namespace cartanlab {

namespace {

RealVector realify(const Matrix& m) {
  RealVector out(2 * m.size());
  const auto flat = m.reshaped();
  for (int i = 0; i < flat.size(); ++i) {
    out[2 * i] = flat[i].real();
    out[2 * i + 1] = flat[i].imag();
  }
  return out;
}

/// Coordinates of xi2 over basis_m (least squares, residual-checked).
RealVector m_coordinates(const KleinPair& pair, const Matrix& xi2) {
  const int d = pair.dim_m();
  RealMatrix cols(2 * xi2.size(), d);
  for (int j = 0; j < d; ++j) cols.col(j) = realify(pair.basis_m[j]);
  const RealVector rhs = realify(xi2);
  const RealVector c = cols.colPivHouseholderQr().solve(rhs);
  if ((cols * c - rhs).norm() > 1e-9 * (1.0 + rhs.norm())) {
    throw domain_error("element does not lie in the chosen m");
  }
  return c;
}

Matrix from_m_coordinates(const KleinPair& pair, const RealVector& c) {
  Matrix out = Matrix::Zero(pair.matrix_size(), pair.matrix_size());
  for (int j = 0; j < pair.dim_m(); ++j) out += c[j] * pair.basis_m[j];
  return out;
}

}  // namespace

CartanBundle CartanBundle::orbit_model(LinearAction act, ProjectivePoint base) {
  validate(act);
  if (base.dim() != act.dim_v) throw config_error("base point size mismatch");
  CartanBundle b;
  b.klein = act.klein;
  b.action = std::move(act);
  b.base = std::move(base);
  return b;
}

void CartanBundle::certify(Rng& rng, int samples, double tol) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const GroupElement g = klein.random_compact(rng, 1.0);
    const Matrix xi = klein.random_ambient(rng, 0.7);
    const ProjectivePoint m =
        ProjectivePoint::from(action.grp(matrix_exp(xi)) * base.v);
    worst = std::max(worst, fnorm(cocycle_sigma(action, g, m)));
  }
  if (worst > tol) {
    throw precondition_error(
        "momentum map failed the equivariance sampling at residual " +
        std::to_string(worst));
  }
  certificate = EquivarianceCertificate{worst, samples};
}

GroupElement CartanBundle::identity_point() const {
  const int n = klein.matrix_size();
  return GroupElement::checked(Matrix::Identity(n, n),
                               klein.ambient_group_tag);
}

GroupElement CartanBundle::ambient_exp(const Matrix& xi) const {
  return GroupElement::checked(matrix_exp(xi), klein.ambient_group_tag);
}

Matrix CartanBundle::apply_lambda(const Matrix& xi) const {
  if (!lambda_m) return xi;
  const auto [xi1, xi2] = klein.decompose(xi);
  const RealVector c = m_coordinates(klein, xi2);
  return xi1 + Complex(0.0, 1.0) * from_m_coordinates(klein, *lambda_m * c);
}

Matrix CartanBundle::apply_lambda_inverse(const Matrix& xi) const {
  if (!lambda_m) return xi;
  const auto [xi1, xi2] = klein.decompose(xi);
  const RealVector c = m_coordinates(klein, xi2);
  const RealVector back = lambda_m->partialPivLu().solve(c);
  return xi1 + Complex(0.0, 1.0) * from_m_coordinates(klein, back);
}

ProjectivePoint chi(const CartanBundle& b, const GroupElement& p) {
  return ProjectivePoint::from(b.action.grp(p.a) * b.base.v);
}

Matrix theta(const CartanBundle& b, const GroupElement& p, const Matrix& pdot) {
  // pdot p^{-1}, solved as p^T x^T = pdot^T.
  const Matrix raw =
      p.a.transpose().partialPivLu().solve(pdot.transpose()).transpose();
  b.klein.decompose(raw);  // membership check
  return b.apply_lambda(raw);
}

Matrix theta_inverse(const CartanBundle& b, const GroupElement& p,
                     const Matrix& xi) {
  return b.apply_lambda_inverse(xi) * p.a;
}

TangentVector orbit_velocity(const CartanBundle& b, const GroupElement& p,
                             const Matrix& zeta) {
  const Matrix rep = b.action.grp(p.a);
  const Vector u = rep * b.base.v;
  const Vector udot = rep * (b.action.alg(zeta) * b.base.v);
  return projective_velocity(u, udot);
}

TangentVector rho(const CartanBundle& b, const Matrix& xi,
                  const GroupElement& p) {
  const Vector u = b.action.grp(p.a) * b.base.v;
  const Vector udot = b.action.alg(b.apply_lambda_inverse(xi)) * u;
  return projective_velocity(u, udot);
}

Matrix momentum_at(const CartanBundle& b, const GroupElement& p) {
  return momentum(b.action, chi(b, p)).value;
}

Matrix calabi_operator(const CartanBundle& b, const GroupElement& p,
                       const Matrix& xi, double h) {
  const TangentVector v = rho(b, xi, p);
  return momentum_derivative(b.action, v.base, v.w, h);
}

double a_equivariance_defect(const CartanBundle& b, const GroupElement& p,
                             const Matrix& xi, const Matrix& eta, double h) {
  const Matrix c_xi = calabi_operator(b, p, xi, h);
  const Matrix c_eta = calabi_operator(b, p, eta, h);
  const Matrix mu = momentum_at(b, p);
  return std::abs(kappa_a(b.klein, c_xi, eta) - kappa_a(b.klein, c_eta, xi) +
                  kappa_a(b.klein, mu, bracket(xi, eta)));
}

GroupElement geodesic_point(const CartanBundle& b, const GroupElement& p,
                            const Matrix& xi, double t) {
  const Matrix step = matrix_exp(t * b.apply_lambda_inverse(xi));
  return GroupElement::checked(step * p.a, b.klein.ambient_group_tag);
}

bool StabilizerBasis::contains(const Matrix& xi, double tol) const {
  if (basis.empty()) return fnorm(xi) <= tol;
  RealMatrix cols(2 * xi.size(), static_cast<int>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    cols.col(static_cast<int>(j)) = realify(basis[j]);
  }
  const RealVector rhs = realify(xi);
  const RealVector c = cols.colPivHouseholderQr().solve(rhs);
  return (cols * c - rhs).norm() <= tol * (1.0 + rhs.norm());
}

StabilizerBasis stabilizer_basis(const CartanBundle& b, const GroupElement& p,
                                 double cutoff, double gap) {
  const KleinPair& pair = b.klein;
  std::vector<Matrix> dirs;
  dirs.reserve(pair.dim_g() + pair.dim_m());
  for (const Matrix& e : pair.basis_g) dirs.push_back(e);
  for (const Matrix& e : pair.basis_m) dirs.push_back(Complex(0.0, 1.0) * e);
  const int d = static_cast<int>(dirs.size());

  RealMatrix jac(2 * b.base.dim(), d);
  for (int j = 0; j < d; ++j) {
    Vector w = rho(b, dirs[j], p).w;
    RealVector col(2 * w.size());
    for (int i = 0; i < w.size(); ++i) {
      col[2 * i] = w[i].real();
      col[2 * i + 1] = w[i].imag();
    }
    jac.col(j) = col;
  }

  Eigen::JacobiSVD<RealMatrix> svd(jac, Eigen::ComputeFullV);
  const RealVector sv = svd.singularValues();
  const int nsv = static_cast<int>(sv.size());
  const double scale = nsv > 0 ? std::max(1.0, sv[0]) : 1.0;
  const double thresh = cutoff * scale;

  StabilizerBasis out;
  double smallest_kept = 0.0;
  double largest_cut = 0.0;
  std::vector<int> null_cols;
  for (int j = 0; j < d; ++j) {
    const double s = j < nsv ? sv[j] : 0.0;
    if (s <= thresh) {
      null_cols.push_back(j);
      largest_cut = std::max(largest_cut, s);
    } else {
      smallest_kept = s;  // singular values are sorted decreasingly
    }
  }
  if (!null_cols.empty() && smallest_kept > 0.0 &&
      largest_cut / smallest_kept > gap) {
    throw ambiguity_error("stabilizer rank decision sits in the gray zone");
  }
  out.smallest_kept_sv = smallest_kept;
  out.largest_cut_sv = largest_cut;

  const RealMatrix v = svd.matrixV();
  RealMatrix null_v(d, static_cast<int>(null_cols.size()));
  for (std::size_t k = 0; k < null_cols.size(); ++k) {
    null_v.col(static_cast<int>(k)) = v.col(null_cols[k]);
    Matrix elem = Matrix::Zero(pair.matrix_size(), pair.matrix_size());
    for (int j = 0; j < d; ++j) elem += v(j, null_cols[k]) * dirs[j];
    out.basis.push_back(std::move(elem));
  }
  out.real_dim = static_cast<int>(out.basis.size());

  // Bracket closure of the kernel, as a residual against its own span.
  double closure = 0.0;
  for (std::size_t i = 0; i < out.basis.size(); ++i) {
    for (std::size_t j = i + 1; j < out.basis.size(); ++j) {
      const Matrix k = bracket(out.basis[i], out.basis[j]);
      RealMatrix cols(2 * k.size(), out.real_dim);
      for (int c = 0; c < out.real_dim; ++c) cols.col(c) = realify(out.basis[c]);
      const RealVector rhs = realify(k);
      const RealVector sol = cols.colPivHouseholderQr().solve(rhs);
      closure = std::max(closure,
                         (cols * sol - rhs).norm() / (1.0 + rhs.norm()));
    }
  }
  out.bracket_closure_residual = closure;

  if (out.real_dim == 0) {
    out.complex_dim = 0;
  } else if (pair.full_complexification()) {
    bool i_stable = true;
    for (const Matrix& e : out.basis) {
      if (!out.contains(Complex(0.0, 1.0) * e, 1e-7)) {
        i_stable = false;
        break;
      }
    }
    out.complex_dim = i_stable ? out.real_dim / 2 : -1;
  }
  return out;
}

}  // namespace cartanlab
