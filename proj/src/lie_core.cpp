#include "cartanlab/lie_core.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "cartanlab/errors.hpp"
#include "cartanlab/tolerances.hpp"

namespace cartanlab {

namespace {

bool is_diagonal(const Matrix& m, double tol) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > tol) return false;
  return true;
}

// Real coordinates of a complex matrix, stacking Re over Im.
RealVector realify(const Matrix& m) {
  RealVector out(2 * m.size());
  Eigen::Map<const Eigen::VectorXcd> flat(m.data(), m.size());
  out.head(m.size()) = flat.real();
  out.tail(m.size()) = flat.imag();
  return out;
}

}  // namespace

std::string to_string(AlgebraTag tag) {
  switch (tag) {
    case AlgebraTag::unitary: return "u(n)";
    case AlgebraTag::special_unitary: return "su(n)";
    case AlgebraTag::special_linear: return "sl(n,C)";
    case AlgebraTag::general_linear: return "gl(n,C)";
    case AlgebraTag::torus: return "u(1)^k";
    case AlgebraTag::torus_complex: return "t_C";
  }
  return "?";
}

std::string to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::unitary: return "U(n)";
    case GroupTag::special_unitary: return "SU(n)";
    case GroupTag::special_linear: return "SL(n,C)";
    case GroupTag::general_linear: return "GL(n,C)";
    case GroupTag::torus: return "U(1)^k";
    case GroupTag::torus_complex: return "(C*)^k";
  }
  return "?";
}

void validate(const AlgebraElement& x) {
  const double tol = tols::element_invariant * (1.0 + x.m.norm());
  if (x.m.rows() != x.m.cols())
    throw shape_error("algebra element must be square");
  switch (x.tag) {
    case AlgebraTag::unitary:
      if ((x.m + x.m.adjoint()).norm() > tol)
        throw shape_error("u(n) element must be anti-Hermitian");
      break;
    case AlgebraTag::special_unitary:
      if ((x.m + x.m.adjoint()).norm() > tol)
        throw shape_error("su(n) element must be anti-Hermitian");
      if (std::abs(x.m.trace()) > tol)
        throw shape_error("su(n) element must be traceless");
      break;
    case AlgebraTag::special_linear:
      if (std::abs(x.m.trace()) > tol)
        throw shape_error("sl(n,C) element must be traceless");
      break;
    case AlgebraTag::general_linear:
      break;
    case AlgebraTag::torus:
      if (!is_diagonal(x.m, tol))
        throw shape_error("torus element must be diagonal");
      if (x.m.diagonal().real().norm() > tol)
        throw shape_error("torus element must be purely imaginary");
      break;
    case AlgebraTag::torus_complex:
      if (!is_diagonal(x.m, tol))
        throw shape_error("complex torus element must be diagonal");
      break;
  }
}

void validate(const GroupElement& g) {
  const int n = static_cast<int>(g.a.rows());
  if (g.a.rows() != g.a.cols()) throw shape_error("group element must be square");
  const double tol = tols::element_invariant * (1.0 + g.a.norm());
  const auto unitary_defect = [&] {
    return (g.a.adjoint() * g.a - Matrix::Identity(n, n)).norm();
  };
  switch (g.tag) {
    case GroupTag::unitary:
      if (unitary_defect() > tol) throw shape_error("U(n) element not unitary");
      break;
    case GroupTag::special_unitary:
      if (unitary_defect() > tol) throw shape_error("SU(n) element not unitary");
      if (std::abs(g.a.determinant() - 1.0) > tol)
        throw shape_error("SU(n) element must have det 1");
      break;
    case GroupTag::special_linear:
      if (std::abs(g.a.determinant() - 1.0) > tol)
        throw shape_error("SL(n,C) element must have det 1");
      break;
    case GroupTag::general_linear:
      if (std::abs(g.a.determinant()) < tol)
        throw shape_error("GL(n,C) element must be invertible");
      break;
    case GroupTag::torus:
      if (!is_diagonal(g.a, tol)) throw shape_error("torus element not diagonal");
      for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(std::abs(g.a(i, i)) - 1.0) > tol)
          throw shape_error("U(1)^k entries must have unit modulus");
      break;
    case GroupTag::torus_complex:
      if (!is_diagonal(g.a, tol)) throw shape_error("torus element not diagonal");
      for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(g.a(i, i)) < tol)
          throw shape_error("(C*)^k entries must be nonzero");
      break;
  }
}

AlgebraElement AlgebraElement::checked(Matrix m, AlgebraTag tag) {
  AlgebraElement x{std::move(m), tag};
  validate(x);
  return x;
}

GroupElement GroupElement::checked(Matrix a, GroupTag tag) {
  GroupElement g{std::move(a), tag};
  validate(g);
  return g;
}

GroupTag group_tag_for(AlgebraTag tag) {
  switch (tag) {
    case AlgebraTag::unitary: return GroupTag::unitary;
    case AlgebraTag::special_unitary: return GroupTag::special_unitary;
    case AlgebraTag::special_linear: return GroupTag::special_linear;
    case AlgebraTag::general_linear: return GroupTag::general_linear;
    case AlgebraTag::torus: return GroupTag::torus;
    case AlgebraTag::torus_complex: return GroupTag::torus_complex;
  }
  return GroupTag::general_linear;
}

AlgebraTag complexified(AlgebraTag tag) {
  switch (tag) {
    case AlgebraTag::special_unitary: return AlgebraTag::special_linear;
    case AlgebraTag::unitary: return AlgebraTag::general_linear;
    case AlgebraTag::torus: return AlgebraTag::torus_complex;
    default: return tag;
  }
}

void KleinPair::finalize() {
  const int d = dim_g();
  gram_g_ = RealMatrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram_g_(i, j) = kappa(basis_g[i], basis_g[j]);
  gram_g_ldlt_.compute(gram_g_);

  const int rows = 2 * matrix_size() * matrix_size();
  gbasis_mat_ = RealMatrix(rows, d);
  for (int i = 0; i < d; ++i) gbasis_mat_.col(i) = realify(basis_g[i]);
  gbasis_qr_.compute(gbasis_mat_);

  decomp_basis_ = RealMatrix(rows, d + dim_m());
  decomp_basis_.leftCols(d) = gbasis_mat_;
  for (int i = 0; i < dim_m(); ++i)
    decomp_basis_.col(d + i) = realify(Matrix(Complex(0, 1) * basis_m[i]));
  decomp_qr_.compute(decomp_basis_);
}

KleinPair KleinPair::complexified_su(int n) {
  if (n < 2) throw config_error("su(n) needs n >= 2");
  KleinPair p;
  p.ambient_tag = AlgebraTag::special_linear;
  p.subalgebra_tag = AlgebraTag::special_unitary;
  p.group_tag = GroupTag::special_unitary;
  p.ambient_group_tag = GroupTag::special_linear;
  const Complex I(0, 1);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Matrix a = Matrix::Zero(n, n);
      a(j, k) = 1;
      a(k, j) = -1;
      p.basis_g.push_back(a);
      Matrix b = Matrix::Zero(n, n);
      b(j, k) = I;
      b(k, j) = I;
      p.basis_g.push_back(b);
    }
  for (int j = 0; j + 1 < n; ++j) {
    Matrix d = Matrix::Zero(n, n);
    d(j, j) = I;
    d(j + 1, j + 1) = -I;
    p.basis_g.push_back(d);
  }
  p.basis_m = p.basis_g;
  p.full_complexification_ = true;
  p.finalize();
  return p;
}

KleinPair KleinPair::complexified_u(int n) {
  if (n < 1) throw config_error("u(n) needs n >= 1");
  KleinPair p;
  p.ambient_tag = AlgebraTag::general_linear;
  p.subalgebra_tag = AlgebraTag::unitary;
  p.group_tag = GroupTag::unitary;
  p.ambient_group_tag = GroupTag::general_linear;
  const Complex I(0, 1);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Matrix a = Matrix::Zero(n, n);
      a(j, k) = 1;
      a(k, j) = -1;
      p.basis_g.push_back(a);
      Matrix b = Matrix::Zero(n, n);
      b(j, k) = I;
      b(k, j) = I;
      p.basis_g.push_back(b);
    }
  for (int j = 0; j < n; ++j) {
    Matrix d = Matrix::Zero(n, n);
    d(j, j) = I;
    p.basis_g.push_back(d);
  }
  p.basis_m = p.basis_g;
  p.full_complexification_ = true;
  p.finalize();
  return p;
}

KleinPair KleinPair::complexified_torus(int k) {
  if (k < 1) throw config_error("torus needs k >= 1");
  KleinPair p;
  p.ambient_tag = AlgebraTag::torus_complex;
  p.subalgebra_tag = AlgebraTag::torus;
  p.group_tag = GroupTag::torus;
  p.ambient_group_tag = GroupTag::torus_complex;
  const Complex I(0, 1);
  for (int j = 0; j < k; ++j) {
    Matrix d = Matrix::Zero(k, k);
    d(j, j) = I;
    p.basis_g.push_back(d);
  }
  p.basis_m = p.basis_g;
  p.full_complexification_ = true;
  p.finalize();
  return p;
}

KleinPair KleinPair::torus_with_complement(int k, std::vector<Matrix> m_basis) {
  KleinPair p = complexified_torus(k);
  for (const auto& e : m_basis)
    validate(AlgebraElement{e, AlgebraTag::torus});
  p.basis_m = std::move(m_basis);
  p.full_complexification_ = false;
  p.finalize();
  return p;
}

std::pair<Matrix, Matrix> KleinPair::decompose(const Matrix& xi) const {
  if (xi.rows() != matrix_size() || xi.cols() != matrix_size())
    throw shape_error("decompose: size mismatch with the pair");
  const RealVector target = realify(xi);
  const RealVector c = decomp_qr_.solve(target);
  const double residual = (decomp_basis_ * c - target).norm();
  if (residual > 1e-9 * (1.0 + xi.norm()))
    throw domain_error("element does not lie in g + i*m");
  const int d = dim_g();
  Matrix xi1 = Matrix::Zero(matrix_size(), matrix_size());
  for (int i = 0; i < d; ++i) xi1 += c[i] * basis_g[i];
  Matrix xi2 = Matrix::Zero(matrix_size(), matrix_size());
  for (int i = 0; i < dim_m(); ++i) xi2 += c[d + i] * basis_m[i];
  return {xi1, xi2};
}

RealVector KleinPair::g_coordinates(const Matrix& mu) const {
  const RealVector target = realify(mu);
  const RealVector c = gbasis_qr_.solve(target);
  if ((gbasis_mat_ * c - target).norm() > 1e-9 * (1.0 + mu.norm()))
    throw domain_error("element does not lie in g");
  return c;
}

Matrix KleinPair::from_g_coordinates(const RealVector& c) const {
  Matrix out = Matrix::Zero(matrix_size(), matrix_size());
  for (int i = 0; i < dim_g(); ++i) out += c[i] * basis_g[i];
  return out;
}

RealVector KleinPair::solve_gram_g(const RealVector& rhs) const {
  return gram_g_ldlt_.solve(rhs);
}

Matrix KleinPair::random_g(Rng& rng, double radius) const {
  Matrix out = Matrix::Zero(matrix_size(), matrix_size());
  for (const auto& e : basis_g) out += rng.normal() * e;
  const double n = out.norm();
  if (n > 0) out *= radius * rng.uniform() / n;
  return out;
}

Matrix KleinPair::random_ambient(Rng& rng, double radius) const {
  Matrix out = Matrix::Zero(matrix_size(), matrix_size());
  for (const auto& e : basis_g) out += rng.normal() * e;
  for (const auto& e : basis_m) out += rng.normal() * Complex(0, 1) * e;
  const double n = out.norm();
  if (n > 0) out *= radius * rng.uniform() / n;
  return out;
}

GroupElement KleinPair::random_compact(Rng& rng, double radius) const {
  return group_exp(AlgebraElement{random_g(rng, radius), subalgebra_tag});
}

Matrix bracket(const Matrix& x, const Matrix& y) { return x * y - y * x; }

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.m.rows() != y.m.rows())
    throw shape_error("bracket: size mismatch");
  AlgebraTag tag = x.tag;
  if (x.tag != y.tag) tag = AlgebraTag::general_linear;
  // u(n) and torus brackets stay in the algebra; mixed tags fall back to gl.
  return AlgebraElement{bracket(x.m, y.m), tag};
}

Matrix matrix_exp(const Matrix& x) { return x.exp(); }

GroupElement group_exp(const AlgebraElement& x) {
  return GroupElement{matrix_exp(x.m), group_tag_for(x.tag)};
}

Matrix adjoint(const Matrix& g, const Matrix& x) {
  // g x g^{-1} without forming the inverse: x g^{-1} solves y g = x.
  const Matrix y =
      g.transpose().partialPivLu().solve(x.transpose()).transpose();
  return g * y;
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x) {
  if (g.a.rows() != x.m.rows()) throw shape_error("adjoint: size mismatch");
  return AlgebraElement{adjoint(g.a, x.m), x.tag};
}

double kappa(const Matrix& mu, const Matrix& xi) {
  if (mu.rows() != xi.rows() || mu.cols() != xi.cols())
    throw shape_error("kappa: size mismatch");
  return -(mu * xi).trace().real();
}

double kappa_a(const KleinPair& pair, const Matrix& mu, const Matrix& xi) {
  const auto [xi1, xi2] = pair.decompose(xi);
  (void)xi1;
  return -kappa(mu, xi2);
}

Matrix coadjoint(const Matrix& xi, const Matrix& mu) {
  return bracket(mu, xi);
}

std::pair<AlgebraElement, GroupElement> polar_decompose(const GroupElement& a) {
  Eigen::JacobiSVD<Matrix> svd(a.a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix u = svd.matrixU() * svd.matrixV().adjoint();
  Matrix logS = Matrix::Zero(a.a.rows(), a.a.cols());
  for (Eigen::Index i = 0; i < a.a.rows(); ++i) {
    const double s = svd.singularValues()[i];
    if (s <= 0) throw domain_error("polar_decompose: singular input");
    logS(i, i) = std::log(s);
  }
  const Matrix h = svd.matrixU() * logS * svd.matrixU().adjoint();
  AlgebraTag htag = AlgebraTag::general_linear;
  GroupTag utag = GroupTag::unitary;
  switch (a.tag) {
    case GroupTag::special_linear:
      htag = AlgebraTag::special_linear;
      utag = GroupTag::special_unitary;
      break;
    case GroupTag::torus_complex:
      htag = AlgebraTag::torus_complex;
      utag = GroupTag::torus;
      break;
    case GroupTag::unitary:
    case GroupTag::special_unitary:
    case GroupTag::torus:
      htag = AlgebraTag::general_linear;
      utag = a.tag;
      break;
    default:
      break;
  }
  return {AlgebraElement{h, htag}, GroupElement{u, utag}};
}

}  // namespace cartanlab
