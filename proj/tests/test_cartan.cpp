#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cartanlab/cartan.hpp"
#include "cartanlab/errors.hpp"
#include "cartanlab/rng.hpp"

using namespace cartanlab;

namespace {

const Complex I(0.0, 1.0);

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Vector vec2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

CartanBundle sl2_bundle() {
  const KleinPair pair = KleinPair::complexified_su(2);
  return CartanBundle::orbit_model(LinearAction::identity_on(pair),
                                   ProjectivePoint::from(vec2(1.0, 0.0)));
}

CartanBundle torus_bundle(const Vector& base) {
  Eigen::MatrixXi W(2, 1);
  W << 1, -1;
  return CartanBundle::orbit_model(LinearAction::torus_weights(W),
                                   ProjectivePoint::from(base));
}

}  // namespace

TEST_CASE("connection and its inverse are mutually inverse") {
  CartanBundle b = sl2_bundle();
  Rng rng(3);
  const GroupElement p = b.ambient_exp(b.klein.random_ambient(rng, 0.8));

  SUBCASE("identity twist") {
    const Matrix xi = b.klein.random_ambient(rng, 1.0);
    const Matrix pdot = theta_inverse(b, p, xi);
    CHECK(fnorm(theta(b, p, pdot) - xi) < 1e-12);
  }

  SUBCASE("diagonal twist on the m coordinates") {
    RealMatrix lam = RealVector::LinSpaced(3, 2.0, 4.0).asDiagonal();
    b.lambda_m = lam;
    const Matrix xi = b.klein.random_ambient(rng, 1.0);
    const Matrix pdot = theta_inverse(b, p, xi);
    CHECK(fnorm(theta(b, p, pdot) - xi) < 1e-12);
    CHECK(fnorm(b.apply_lambda_inverse(b.apply_lambda(xi)) - xi) < 1e-12);
    // The twist leaves the compact directions alone.
    const Matrix eta = b.klein.random_g(rng, 1.0);
    CHECK(fnorm(b.apply_lambda(eta) - eta) < 1e-13);
  }
}

TEST_CASE("fundamental field matches a finite difference of chi") {
  CartanBundle b = sl2_bundle();
  Rng rng(5);
  const GroupElement p = b.ambient_exp(b.klein.random_ambient(rng, 0.6));
  const Matrix xi = b.klein.random_ambient(rng, 1.0);

  const TangentVector v = rho(b, xi, p);
  const double h = 1e-6;
  const auto chart = [&](double s) -> Vector {
    const ProjectivePoint q = chi(b, geodesic_point(b, p, xi, s));
    return q.v / v.base.v.dot(q.v) - v.base.v;
  };
  const Vector fd = (chart(h) - chart(-h)) / (2.0 * h);
  CHECK((fd - v.w).norm() < 1e-7 * (1.0 + v.w.norm()));
}

TEST_CASE("stabilizer at the coordinate base point is the upper triangle") {
  CartanBundle b = sl2_bundle();
  const StabilizerBasis stab = stabilizer_basis(b, b.identity_point());
  CHECK(stab.real_dim == 4);
  CHECK(stab.complex_dim == 2);
  CHECK(stab.bracket_closure_residual < 1e-10);
  CHECK(stab.contains(mat2(0, 1, 0, 0)));           // raising element
  CHECK(stab.contains(mat2(1, 0, 0, -1)));          // diagonal
  CHECK(stab.contains(I * mat2(1, 0, 0, -1)));
  CHECK_FALSE(stab.contains(mat2(0, 0, 1, 0)));     // lowering element

  // Stabilizer directions generate curves that fix the base point globally.
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    const GroupElement p = b.ambient_exp(b.klein.random_ambient(rng, 0.9));
    CHECK(orbit_velocity(b, p, mat2(0, 1, 0, 0)).w.norm() < 1e-13);
    CHECK(orbit_velocity(b, p, mat2(1, 0, 0, -1)).w.norm() < 1e-13);
  }
}

TEST_CASE("stabilizer dimensions across torus orbit types") {
  const StabilizerBasis generic =
      stabilizer_basis(torus_bundle(vec2(1.0, 1.0)), GroupElement::checked(
          Matrix::Identity(1, 1), GroupTag::torus_complex));
  CHECK(generic.real_dim == 0);
  CHECK(generic.complex_dim == 0);

  const StabilizerBasis fixed =
      stabilizer_basis(torus_bundle(vec2(1.0, 0.0)), GroupElement::checked(
          Matrix::Identity(1, 1), GroupTag::torus_complex));
  CHECK(fixed.real_dim == 2);
  CHECK(fixed.complex_dim == 1);
}

TEST_CASE("momentum derivative along compact directions is a bracket") {
  CartanBundle b = sl2_bundle();
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    const GroupElement p = b.ambient_exp(b.klein.random_ambient(rng, 0.8));
    const Matrix xi = b.klein.random_g(rng, 1.0);
    const Matrix fd = calabi_operator(b, p, xi);
    const Matrix closed = -coadjoint(xi, momentum_at(b, p));
    CHECK(fnorm(fd - closed) < 1e-8);
  }
}

TEST_CASE("second-order symmetry identity holds on the full pair") {
  CartanBundle b = sl2_bundle();
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    const GroupElement p = b.ambient_exp(b.klein.random_ambient(rng, 0.7));
    const Matrix xi = b.klein.random_ambient(rng, 1.0);
    const Matrix eta = b.klein.random_ambient(rng, 1.0);
    CHECK(a_equivariance_defect(b, p, xi, eta) < 1e-7);
  }
}

TEST_CASE("certification samples the cocycle") {
  CartanBundle b = sl2_bundle();
  CHECK_FALSE(b.certified());
  Rng rng(29);
  b.certify(rng, 25);
  CHECK(b.certified());
  CHECK(b.certificate->max_cocycle < 1e-10);
  CHECK(b.certificate->samples == 25);
}

TEST_CASE("geodesic points stay in the ambient group") {
  CartanBundle b = sl2_bundle();
  Rng rng(37);
  const Matrix xi = b.klein.random_ambient(rng, 1.0);
  const GroupElement p = geodesic_point(b, b.identity_point(), xi, 0.5);
  CHECK(p.tag == GroupTag::special_linear);
  CHECK(std::abs(p.a.determinant() - Complex(1.0, 0.0)) < 1e-10);
}
