#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cartanlab/common.hpp"
#include "cartanlab/rng.hpp"

namespace cartanlab {

// Matrix models of the Lie algebras in play.  Torus tags hold diagonal
// matrices of the given size; the others are full matrices.
enum class AlgebraTag {
  unitary,          // u(n): anti-Hermitian
  special_unitary,  // su(n): anti-Hermitian, traceless
  special_linear,   // sl(n,C): traceless
  general_linear,   // gl(n,C)
  torus,            // u(1)^k: diagonal, purely imaginary entries
  torus_complex,    // complexified torus: diagonal complex entries
};

enum class GroupTag {
  unitary,          // U(n)
  special_unitary,  // SU(n)
  special_linear,   // SL(n,C)
  general_linear,   // GL(n,C)
  torus,            // U(1)^k: diagonal, unit-modulus entries
  torus_complex,    // (C*)^k: diagonal, invertible
};

std::string to_string(AlgebraTag tag);
std::string to_string(GroupTag tag);

/// An element of a matrix Lie algebra together with its tag.
/// `checked` validates the tag invariant (anti-Hermitian / traceless /
/// diagonal as appropriate) to the shared element tolerance.
struct AlgebraElement {
  Matrix m;
  AlgebraTag tag = AlgebraTag::general_linear;

  static AlgebraElement checked(Matrix m, AlgebraTag tag);
};

/// An element of a matrix Lie group together with its tag.
struct GroupElement {
  Matrix a;
  GroupTag tag = GroupTag::general_linear;

  static GroupElement checked(Matrix a, GroupTag tag);
};

void validate(const AlgebraElement& x);
void validate(const GroupElement& g);

GroupTag group_tag_for(AlgebraTag tag);
/// Tag of the complexification (su -> sl, torus -> torus_complex, ...).
AlgebraTag complexified(AlgebraTag tag);

/// A pair (a, g): an ambient algebra a containing the compact algebra g,
/// split as a = g + i*m for a chosen Ad(G)-stable subspace m of g.  The
/// shipped constructions either take m = g (full complexification) or a
/// proper abelian complement.  Real bases of g and m are stored; the basis
/// of the complement of g inside a is {i*e : e in basis_m}.
class KleinPair {
 public:
  AlgebraTag ambient_tag;
  AlgebraTag subalgebra_tag;
  GroupTag group_tag;          // compact group G
  GroupTag ambient_group_tag;  // group the bundle points live in
  std::vector<Matrix> basis_g;
  std::vector<Matrix> basis_m;

  /// (sl(n,C), su(n)) with m = g, acting on C^n.
  static KleinPair complexified_su(int n);
  /// (u(n) + i u(n), u(n)) = (gl(n,C), u(n)) with m = g.
  static KleinPair complexified_u(int n);
  /// (diagonal gl(1)^k complexified, u(1)^k) with m = g.
  static KleinPair complexified_torus(int k);
  /// (u(1)^k + i*m, u(1)^k) for a proper subspace m spanned by the given
  /// purely imaginary diagonal matrices.
  static KleinPair torus_with_complement(int k, std::vector<Matrix> m_basis);

  int dim_g() const { return static_cast<int>(basis_g.size()); }
  int dim_m() const { return static_cast<int>(basis_m.size()); }
  int matrix_size() const { return static_cast<int>(basis_g[0].rows()); }
  bool full_complexification() const { return full_complexification_; }

  /// Split xi = xi1 + i*xi2 with xi1 in g, xi2 in m.  Throws domain_error
  /// if xi does not lie in g + i*m (residual above 1e-9 * |xi|).
  std::pair<Matrix, Matrix> decompose(const Matrix& xi) const;

  /// Coordinates of a g-element over basis_g (least squares with residual
  /// check) and the reverse assembly.
  RealVector g_coordinates(const Matrix& mu) const;
  Matrix from_g_coordinates(const RealVector& c) const;

  /// Gram matrix of kappa on basis_g and a cached factorization.
  const RealMatrix& gram_g() const { return gram_g_; }
  RealVector solve_gram_g(const RealVector& rhs) const;

  /// Random draws (deterministic under the caller's Rng).
  Matrix random_g(Rng& rng, double radius) const;
  Matrix random_ambient(Rng& rng, double radius) const;
  GroupElement random_compact(Rng& rng, double radius) const;

  void finalize();  // builds caches; called by the constructors

 private:
  bool full_complexification_ = false;
  RealMatrix gram_g_;
  Eigen::LDLT<RealMatrix> gram_g_ldlt_;
  RealMatrix decomp_basis_;  // columns: real coords of {basis_g, i*basis_m}
  Eigen::ColPivHouseholderQR<RealMatrix> decomp_qr_;
  RealMatrix gbasis_mat_;  // columns: real coords of basis_g
  Eigen::ColPivHouseholderQR<RealMatrix> gbasis_qr_;
};

/// Lie bracket [x, y] = xy - yx.
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
Matrix bracket(const Matrix& x, const Matrix& y);

/// Matrix exponential (scaling-and-squaring with a Pade core).
GroupElement group_exp(const AlgebraElement& x);
Matrix matrix_exp(const Matrix& x);

/// Adjoint action g x g^{-1}.
AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x);
Matrix adjoint(const Matrix& g, const Matrix& x);

/// The invariant pairing kappa(mu, xi) = -Re tr(mu xi), used throughout to
/// identify g* with g.  Positive definite on the compact algebras.
double kappa(const Matrix& mu, const Matrix& xi);

/// kappa_a(mu, xi) for xi = xi1 + i*xi2 in a = g + i*m: equals
/// -kappa(mu, xi2).  Vanishes whenever xi lies in g.
double kappa_a(const KleinPair& pair, const Matrix& mu, const Matrix& xi);

/// Coadjoint action on g (via the kappa identification), normalized so an
/// equivariant momentum map J satisfies dJ(xi.m) = -coadjoint(xi, J).
Matrix coadjoint(const Matrix& xi, const Matrix& mu);

/// Polar factors (h, u) with exp(h) u = a and h Hermitian.
std::pair<AlgebraElement, GroupElement> polar_decompose(const GroupElement& a);

}  // namespace cartanlab
