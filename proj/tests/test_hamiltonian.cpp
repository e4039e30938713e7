#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cartanlab/errors.hpp"
#include "cartanlab/hamiltonian.hpp"
#include "cartanlab/rng.hpp"

using namespace cartanlab;

namespace {

const Complex I(0.0, 1.0);

Vector vec2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

ProjectivePoint random_point(Rng& rng, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.complex_normal();
  return ProjectivePoint::from(v);
}

}  // namespace

TEST_CASE("projective representatives are canonical") {
  const ProjectivePoint a = ProjectivePoint::from(vec2(1.0 + I, 2.0));
  const ProjectivePoint b =
      ProjectivePoint::from(Complex(0.3, -1.1) * vec2(1.0 + I, 2.0));
  CHECK((a.v - b.v).norm() < 1e-14);
  CHECK(a.v.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a.v[0].imag() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(a.v[0].real() > 0.0);
  CHECK(projective_distance(a, b) < 1e-7);
  CHECK_THROWS_AS(ProjectivePoint::from(vec2(0.0, 0.0)), domain_error);
}

TEST_CASE("tangent vectors live in the orthogonal chart") {
  const ProjectivePoint m = ProjectivePoint::from(vec2(1.0, I));
  const TangentVector x = TangentVector::at(m, vec2(3.0, 1.0 + I));
  CHECK(std::abs(m.v.dot(x.w)) < 1e-14);
  // omega(X, iX) recovers the metric norm.
  CHECK(symplectic_form(x, complex_structure(x)) ==
        doctest::Approx(metric_norm2(x)).epsilon(1e-13));
  CHECK(symplectic_form(x, x) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("unitary momentum map matches the rank-one formula") {
  const KleinPair pair = KleinPair::complexified_u(3);
  const LinearAction act = LinearAction::identity_on(pair);
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const ProjectivePoint m = random_point(rng, 3);
    const Matrix J = momentum(act, m).value;
    const Matrix want = I * (m.v * m.v.adjoint());
    CHECK(fnorm(J - want) < 1e-11);
  }
}

TEST_CASE("torus momentum reads off the weighted masses") {
  Eigen::MatrixXi W(2, 1);
  W << 1, -1;
  const LinearAction act = LinearAction::torus_weights(W);
  validate(act);

  const ProjectivePoint balanced =
      ProjectivePoint::from(vec2(1.0, 1.0) / std::sqrt(2.0));
  CHECK(fnorm(momentum(act, balanced).value) < 1e-14);

  const ProjectivePoint corner = ProjectivePoint::from(vec2(1.0, 0.0));
  Matrix gen(1, 1);
  gen << I;
  CHECK(momentum_pairing(act, corner, gen) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("defining relation holds to finite-difference accuracy") {
  Rng rng(23);
  const KleinPair pair = KleinPair::complexified_u(3);
  const LinearAction act = LinearAction::identity_on(pair);
  for (int t = 0; t < 25; ++t) {
    const ProjectivePoint m = random_point(rng, 3);
    const Matrix xi = pair.random_g(rng, 1.0);
    Vector raw(3);
    for (int i = 0; i < 3; ++i) raw[i] = rng.complex_normal();
    const TangentVector X = TangentVector::at(m, raw);
    CHECK(momentum_defect(act, m, xi, X) < 1e-8);
  }

  Eigen::MatrixXi W(3, 2);
  W << 1, 0, -1, 2, 0, -1;
  const LinearAction torus = LinearAction::torus_weights(W);
  for (int t = 0; t < 25; ++t) {
    const ProjectivePoint m = random_point(rng, 3);
    const Matrix xi = torus.klein.random_g(rng, 1.0);
    Vector raw(3);
    for (int i = 0; i < 3; ++i) raw[i] = rng.complex_normal();
    const TangentVector X = TangentVector::at(m, raw);
    CHECK(momentum_defect(torus, m, xi, X) < 1e-8);
  }
}

TEST_CASE("momentum map is equivariant for the compact group") {
  Rng rng(31);
  const KleinPair pair = KleinPair::complexified_u(3);
  const LinearAction act = LinearAction::identity_on(pair);
  for (int t = 0; t < 15; ++t) {
    const ProjectivePoint m = random_point(rng, 3);
    const GroupElement g = pair.random_compact(rng, 1.0);
    CHECK(fnorm(cocycle_sigma(act, g, m)) < 1e-12);
  }
}

TEST_CASE("projective velocity matches the affine chart derivative") {
  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    Vector u(3), udot(3);
    for (int i = 0; i < 3; ++i) {
      u[i] = rng.complex_normal();
      udot[i] = rng.complex_normal();
    }
    const TangentVector vel = projective_velocity(u, udot);
    const Vector& v = vel.base.v;

    const double h = 1e-6;
    const auto chart = [&](double s) -> Vector {
      const Vector c = u + s * udot;
      return c / v.dot(c) - v;
    };
    const Vector fd = (chart(h) - chart(-h)) / (2.0 * h);
    CHECK((fd - vel.w).norm() < 1e-7 * (1.0 + vel.w.norm()));
  }
}

TEST_CASE("action validation rejects inconsistent maps") {
  LinearAction bad = LinearAction::identity_on(KleinPair::complexified_su(2));
  bad.alg = [](const Matrix& xi) { return Matrix(2.0 * xi); };
  // Doubling is still a homomorphism-breaker for brackets vs products:
  // [2x, 2y] = 4[x,y] != 2[x,y].
  CHECK_THROWS_AS(validate(bad), config_error);

  LinearAction notanti =
      LinearAction::identity_on(KleinPair::complexified_su(2));
  notanti.alg = [](const Matrix& xi) { return Matrix(I * xi); };
  CHECK_THROWS_AS(validate(notanti), config_error);
}
