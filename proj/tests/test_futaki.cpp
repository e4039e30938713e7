#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cartanlab/errors.hpp"
#include "cartanlab/futaki.hpp"
#include "cartanlab/rng.hpp"

using namespace cartanlab;

namespace {

const Complex I(0.0, 1.0);

Vector vec2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

Matrix mat_h() {  // diag(1, -1)
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Matrix mat_e() {  // raising
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Matrix mat_f() {  // lowering
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

Matrix diag1(Complex a) {
  Matrix m(1, 1);
  m << a;
  return m;
}

CartanBundle sl2_bundle(Rng& rng) {
  const KleinPair pair = KleinPair::complexified_su(2);
  CartanBundle b = CartanBundle::orbit_model(
      LinearAction::identity_on(pair), ProjectivePoint::from(vec2(1.0, 0.0)));
  b.certify(rng, 30);
  return b;
}

CartanBundle corner_torus(Rng& rng) {
  Eigen::MatrixXi W(2, 1);
  W << 1, -1;
  CartanBundle b = CartanBundle::orbit_model(
      LinearAction::torus_weights(W), ProjectivePoint::from(vec2(1.0, 0.0)));
  b.certify(rng, 30);
  return b;
}

GroupElement generic_point(const CartanBundle& b, Rng& rng, double radius) {
  const Matrix m = matrix_exp(b.klein.random_ambient(rng, radius)) *
                   matrix_exp(b.klein.random_ambient(rng, radius));
  return GroupElement{m, b.klein.ambient_group_tag};
}

}  // namespace

TEST_CASE("character values are constant over the bundle") {
  Rng rng(801);
  const CartanBundle b = sl2_bundle(rng);

  const ConstancyReport rh = futaki_constancy(b, mat_h(), rng, 50);
  CHECK(std::abs(rh.value - 1.0) < 1e-9);
  CHECK(rh.rel_spread < tols::futaki_spread_rel);
  CHECK(rh.samples == 50);

  const ConstancyReport re = futaki_constancy(b, mat_e(), rng, 50);
  CHECK(std::abs(re.value) < tols::futaki_nilpotent);
  CHECK(re.spread < tols::futaki_nilpotent);

  const ConstancyReport rie = futaki_constancy(b, Matrix(I * mat_e()), rng, 40);
  CHECK(std::abs(rie.value) < tols::futaki_nilpotent);

  // compact trace-direction of the stabilizer: reads zero at every point
  const ConstancyReport rih = futaki_constancy(b, Matrix(I * mat_h()), rng, 40);
  CHECK(std::abs(rih.value) < tols::futaki_nilpotent);
  CHECK(rih.spread < tols::futaki_nilpotent);
}

TEST_CASE("character constancy on a torus fixed point") {
  Rng rng(802);
  const CartanBundle b = corner_torus(rng);

  const ConstancyReport r1 = futaki_constancy(b, diag1(1.0), rng, 40);
  CHECK(std::abs(r1.value - 1.0) < 1e-12);
  CHECK(r1.spread < 1e-12);

  const ConstancyReport ri = futaki_constancy(b, diag1(I), rng, 40);
  CHECK(std::abs(ri.value) < 1e-12);
}

TEST_CASE("constancy preconditions are enforced") {
  Rng rng(803);

  // no certificate yet
  CartanBundle raw = CartanBundle::orbit_model(
      LinearAction::identity_on(KleinPair::complexified_su(2)),
      ProjectivePoint::from(vec2(1.0, 0.0)));
  CHECK_THROWS_AS(futaki_constancy(raw, mat_h(), rng, 10), precondition_error);

  // twisted connection
  CartanBundle twisted = sl2_bundle(rng);
  twisted.lambda_m = RealMatrix::Identity(3, 3) * 2.0;
  CHECK_THROWS_AS(futaki_constancy(twisted, mat_h(), rng, 10),
                  precondition_error);

  // direction that moves the base point
  const CartanBundle b = sl2_bundle(rng);
  CHECK_THROWS_AS(futaki_constancy(b, mat_f(), rng, 10), precondition_error);

  // a balanced torus point has no continuous stabilizer at all
  Eigen::MatrixXi W(2, 1);
  W << 1, -1;
  CartanBundle balanced = CartanBundle::orbit_model(
      LinearAction::torus_weights(W), ProjectivePoint::from(vec2(1.0, 1.0)));
  balanced.certify(rng, 30);
  CHECK_THROWS_AS(futaki_constancy(balanced, diag1(1.0), rng, 10),
                  precondition_error);
}

TEST_CASE("the character kills brackets of stabilizer directions") {
  Rng rng(804);
  const CartanBundle b = sl2_bundle(rng);
  const Matrix basis[4] = {mat_h(), Matrix(I * mat_h()), mat_e(),
                           Matrix(I * mat_e())};
  for (int rep = 0; rep < 5; ++rep) {
    const GroupElement p = generic_point(b, rng, 0.8);
    for (int pair = 0; pair < 5; ++pair) {
      Matrix zeta = Matrix::Zero(2, 2);
      Matrix eta = Matrix::Zero(2, 2);
      for (const Matrix& d : basis) {
        zeta += rng.normal() * d;
        eta += rng.normal() * d;
      }
      CHECK(character_defect(b, p, zeta, eta) < tols::character_defect);
    }
  }
}

TEST_CASE("the slice form and its transport behaviour") {
  Rng rng(805);
  const CartanBundle b = sl2_bundle(rng);
  const KleinPair& pair = b.klein;

  CHECK(xi_form(pair, mat_h(), mat_h()) == doctest::Approx(2.0));
  CHECK(xi_form(pair, mat_e(), mat_e()) == doctest::Approx(0.5));
  CHECK(std::abs(xi_form(pair, mat_e(), Matrix(I * mat_e()))) < 1e-14);
  CHECK(std::abs(xi_form(pair, mat_h(), Matrix(I * mat_h()))) < 1e-14);
  CHECK(std::abs(xi_form(pair, mat_h(), mat_e())) < 1e-14);
  CHECK(std::abs(xi_form(pair, Matrix(I * mat_h()), Matrix(I * mat_h()))) <
        1e-14);

  // conjugation transport genuinely moves the form off the abelian world
  CHECK(xi_form_transport_spread(b, mat_h(), mat_h(), rng, 20) > 0.01);

  const CartanBundle t = corner_torus(rng);
  CHECK(xi_form(t.klein, diag1(1.0), diag1(1.0)) == doctest::Approx(1.0));
  CHECK(xi_form_transport_spread(t, diag1(1.0), diag1(1.0), rng, 20) < 1e-15);
}

TEST_CASE("extremal representatives of the character") {
  Rng rng(806);
  const CartanBundle b = sl2_bundle(rng);

  // at the identity the stabilizer span yields half the diagonal direction
  const StabilizerBasis stab = stabilizer_basis(b, b.identity_point());
  REQUIRE(stab.real_dim == 4);
  const Matrix zeta0 =
      extremal_element(b, b.identity_point(), stab.basis);
  CHECK((zeta0 - 0.5 * mat_h()).norm() < 1e-8);

  // over the base stabilizer the representative is point-independent,
  // because the character itself is
  for (int rep = 0; rep < 4; ++rep) {
    const GroupElement p = generic_point(b, rng, 0.7);
    const Matrix zeta = extremal_element(b, p, stab.basis);
    CHECK((zeta - 0.5 * mat_h()).norm() < 1e-8);
    double residual = 0.0;
    for (const Matrix& d : stab.basis) {
      residual = std::max(residual, std::abs(xi_form(b.klein, zeta, d) -
                                             futaki_character(b, p, d)));
    }
    CHECK(residual < 1e-8);
  }
}

TEST_CASE("extremal elements on torus fixed points") {
  Rng rng(807);

  const CartanBundle t1 = corner_torus(rng);
  const StabilizerBasis s1 = stabilizer_basis(t1, t1.identity_point());
  REQUIRE(s1.real_dim == 2);
  const Matrix z1 = extremal_element(t1, t1.identity_point(), s1.basis);
  CHECK((z1 - diag1(1.0)).norm() < 1e-8);

  // two independent circles acting on C^2, fixed point at the first axis
  Eigen::MatrixXi W(2, 2);
  W << 1, 0, 0, 1;
  CartanBundle t2 = CartanBundle::orbit_model(
      LinearAction::torus_weights(W), ProjectivePoint::from(vec2(1.0, 0.0)));
  t2.certify(rng, 30);
  const StabilizerBasis s2 = stabilizer_basis(t2, t2.identity_point());
  REQUIRE(s2.real_dim == 4);
  const Matrix z2 = extremal_element(t2, t2.identity_point(), s2.basis);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK((z2 - expected).norm() < 1e-8);
}

TEST_CASE("unrepresentable characters raise a degeneracy error") {
  Rng rng(808);
  const CartanBundle b = sl2_bundle(rng);

  // a compact direction outside the stabilizer: the form cannot see it, but
  // away from the identity the character reads a nonzero value along it
  const Matrix d = mat_e() - mat_f();
  const GroupElement p = b.ambient_exp(0.4 * (mat_e() + mat_f()));
  CHECK(std::abs(futaki_character(b, p, d)) > 0.1);
  CHECK_THROWS_AS(extremal_element(b, p, std::vector<Matrix>{d}),
                  degeneracy_error);
}
