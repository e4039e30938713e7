#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cartanlab/errors.hpp"
#include "cartanlab/kempf_ness.hpp"
#include "cartanlab/rng.hpp"

using namespace cartanlab;

namespace {

const Complex I(0.0, 1.0);

Vector vec2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector vec3(Complex a, Complex b, Complex c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

CartanBundle sl2_bundle() {
  const KleinPair pair = KleinPair::complexified_su(2);
  return CartanBundle::orbit_model(LinearAction::identity_on(pair),
                                   ProjectivePoint::from(vec2(1.0, 0.0)));
}

CartanBundle torus_bundle(const Eigen::MatrixXi& W, const Vector& base) {
  return CartanBundle::orbit_model(LinearAction::torus_weights(W),
                                   ProjectivePoint::from(base));
}

Eigen::MatrixXi hyperbola_weights() {  // one-parameter torus on C^2
  Eigen::MatrixXi W(2, 1);
  W << 1, -1;
  return W;
}

Eigen::MatrixXi wide_weights() {  // two-parameter torus on C^3
  Eigen::MatrixXi W(3, 2);
  W << 1, 0, -1, 2, 0, -1;
  return W;
}

RealVector rvec1(double a) {
  RealVector s(1);
  s << a;
  return s;
}

GroupElement generic_point(const CartanBundle& b, Rng& rng, double radius) {
  const Matrix m =
      matrix_exp(b.klein.random_ambient(rng, radius)) *
      matrix_exp(b.klein.random_ambient(rng, radius));
  return GroupElement{m, b.klein.ambient_group_tag};
}

}  // namespace

TEST_CASE("energy profile matches the closed form on the balanced torus point") {
  const CartanBundle b = torus_bundle(hyperbola_weights(), vec2(1.0, 1.0));
  const Matrix xi = torus_direction(rvec1(1.0));
  const KnProfile prof =
      kn_profile(b, b.identity_point(), xi, -1.5, 1.5, 21);

  for (int i = 0; i < prof.t.size(); ++i) {
    const double t = prof.t[i];
    CHECK(std::abs(prof.energy[i] - 0.5 * std::log(std::cosh(2.0 * t))) <
          tols::kn_closed_form);
    CHECK(std::abs(prof.rate[i] - std::tanh(2.0 * t)) < 1e-10);
    const double sech = 1.0 / std::cosh(2.0 * t);
    CHECK(std::abs(prof.curvature[i] - 2.0 * sech * sech) < 1e-6);
  }
  CHECK(prof.max_integration_gap < tols::kn_closed_form);
  CHECK(std::abs(prof.curvature[10] - 2.0) < 1e-6);  // t = 0
}

TEST_CASE("twisted connection stretches the geodesic clock") {
  CartanBundle b = torus_bundle(hyperbola_weights(), vec2(1.0, 1.0));
  RealMatrix twist(1, 1);
  twist << 2.0;
  b.lambda_m = twist;

  const Matrix xi = torus_direction(rvec1(1.0));
  const KnProfile prof = kn_profile(b, b.identity_point(), xi, -2.0, 2.0, 17);
  for (int i = 0; i < prof.t.size(); ++i) {
    const double t = prof.t[i];
    CHECK(std::abs(prof.energy[i] - 0.5 * std::log(std::cosh(t))) <
          tols::kn_closed_form);
    CHECK(std::abs(prof.rate[i] - 0.5 * std::tanh(t)) < 1e-10);
  }
  CHECK(prof.max_integration_gap < tols::kn_closed_form);

  const SlopeResult s = kn_slope(b, b.identity_point(), xi);
  CHECK(std::abs(s.slope - 0.5) < tols::slope_match);
}

TEST_CASE("first variation matches finite differences") {
  Rng rng(7);

  const CartanBundle b = sl2_bundle();
  for (int rep = 0; rep < 20; ++rep) {
    const GroupElement p = generic_point(b, rng, 0.8);
    const Matrix zeta = b.klein.random_ambient(rng, 0.7);
    CHECK(kn_derivative_defect(b, p, zeta) < tols::kn_derivative);
    // The momentum has constant norm on this orbit.
    const Matrix mu = momentum_at(b, p);
    CHECK(std::abs(kappa(mu, mu) - 0.5) < 1e-10);
  }

  const CartanBundle tb = torus_bundle(wide_weights(), vec3(1.0, 1.0, 1.0));
  for (int rep = 0; rep < 20; ++rep) {
    const GroupElement p = generic_point(tb, rng, 0.8);
    const Matrix zeta = tb.klein.random_ambient(rng, 0.7);
    CHECK(kn_derivative_defect(tb, p, zeta) < tols::kn_derivative);
  }
}

TEST_CASE("energy is convex along positive-slice geodesics") {
  Rng rng(11);

  const CartanBundle b = sl2_bundle();
  for (int rep = 0; rep < 8; ++rep) {
    const GroupElement p = generic_point(b, rng, 0.6);
    const Matrix xi = I * b.klein.random_g(rng, 0.7);
    const ConvexityReport conv = kn_convexity(b, p, xi, -0.7, 0.7, 5);
    CHECK(conv.min_curvature > tols::convexity_floor);
    CHECK(conv.max_norm_gap < tols::convexity_match);
    CHECK(conv.max_pairing_gap < tols::convexity_match);
  }

  const CartanBundle tb = torus_bundle(wide_weights(), vec3(1.0, 1.0, 1.0));
  for (int rep = 0; rep < 4; ++rep) {
    const GroupElement p = generic_point(tb, rng, 0.8);
    const Matrix xi = I * tb.klein.random_g(rng, 0.9);
    const ConvexityReport conv = kn_convexity(tb, p, xi, -1.0, 1.0, 5);
    CHECK(conv.min_curvature > tols::convexity_floor);
    CHECK(conv.max_norm_gap < tols::convexity_match);
    CHECK(conv.max_pairing_gap < tols::convexity_match);
  }

  CHECK_THROWS_AS(
      kn_convexity(b, b.identity_point(), b.klein.random_g(rng, 0.5), 0.0, 1.0, 3),
      precondition_error);
}

TEST_CASE("the energy one-form integrates exactly") {
  Rng rng(19);
  const CartanBundle b = sl2_bundle();

  for (int rep = 0; rep < 4; ++rep) {
    // Open path: the integral telescopes to the energy difference.
    std::vector<PathLeg> legs;
    legs.push_back(PathLeg{b.klein.random_ambient(rng, 0.7), 0.7});
    legs.push_back(PathLeg{b.klein.random_ambient(rng, 0.7), 1.3});
    GroupElement end = b.identity_point();
    const double total =
        path_energy_integral(b, b.identity_point(), legs, 1e-12, &end);
    CHECK(std::abs(total - (kn_energy(b, end) - kn_energy(b, b.identity_point()))) <
          1e-9);
  }

  for (int rep = 0; rep < 8; ++rep) {
    const Matrix xi1 = b.klein.random_ambient(rng, 0.7);
    const Matrix xi2 = b.klein.random_ambient(rng, 0.7);
    CHECK(triangle_loop_defect(b, xi1, xi2) < tols::loop_exactness);
  }

  const CartanBundle tb = torus_bundle(wide_weights(), vec3(1.0, 1.0, 1.0));
  for (int rep = 0; rep < 4; ++rep) {
    const Matrix xi1 = tb.klein.random_ambient(rng, 0.9);
    const Matrix xi2 = tb.klein.random_ambient(rng, 0.9);
    CHECK(triangle_loop_defect(tb, xi1, xi2) < tols::loop_exactness);
  }
}

TEST_CASE("asymptotic slope equals the strongest active weight") {
  const Eigen::MatrixXi W1 = hyperbola_weights();

  const CartanBundle balanced = torus_bundle(W1, vec2(1.0, 1.0));
  const CartanBundle corner = torus_bundle(W1, vec2(1.0, 0.0));
  const GroupElement e1 = balanced.identity_point();

  CHECK(std::abs(kn_slope(balanced, e1, torus_direction(rvec1(1.0))).slope - 1.0) <
        tols::slope_match);
  CHECK(std::abs(kn_slope(balanced, e1, torus_direction(rvec1(-1.0))).slope - 1.0) <
        tols::slope_match);
  CHECK(std::abs(kn_slope(corner, e1, torus_direction(rvec1(1.0))).slope - 1.0) <
        tols::slope_match);
  CHECK(std::abs(kn_slope(corner, e1, torus_direction(rvec1(-1.0))).slope + 1.0) <
        tols::slope_match);

  const Eigen::MatrixXi W2 = wide_weights();
  const Vector base = vec3(1.0, 1.0, 1.0);
  const CartanBundle tb = torus_bundle(W2, base);
  const std::vector<bool> mask = support_mask(ProjectivePoint::from(base).v);
  const std::vector<Eigen::VectorXi> dirs = integer_directions(2, 2);
  CHECK(dirs.size() == 16);
  for (const Eigen::VectorXi& s : dirs) {
    const RealVector sd = s.cast<double>();
    const double expected = weight_slope(W2, mask, sd);
    const SlopeResult got =
        kn_slope(tb, tb.identity_point(), torus_direction(sd));
    CHECK(std::abs(got.slope - expected) < tols::slope_match);
  }
}

TEST_CASE("exact integer kernels behave") {
  using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

  IMat a(3, 3);
  a << 2, 0, 1, 1, 3, 2, 0, 1, 4;
  CHECK(int_determinant(a) == 21);
  IMat sing(2, 2);
  sing << 2, 4, 1, 2;
  CHECK(int_determinant(sing) == 0);

  IMat row(1, 3);
  row << 1, -1, 0;
  const IMat null_basis = int_nullspace(row);
  CHECK(null_basis.cols() == 2);
  for (int c = 0; c < null_basis.cols(); ++c) {
    std::int64_t dot = 0;
    for (int j = 0; j < 3; ++j) dot += row(0, j) * null_basis(j, c);
    CHECK(dot == 0);
  }

  IMat full(2, 2);
  full << 1, 0, 0, 1;
  CHECK(int_nullspace(full).cols() == 0);
}

TEST_CASE("weight polytope certificates") {
  auto all = [](int n) { return std::vector<bool>(n, true); };

  // k = 1: interval around zero, one-sided ray, degenerate point.
  Eigen::MatrixXi W1(2, 1);
  W1 << 1, -1;
  CHECK(classify_torus_weights(W1, all(2)).label == StabilityLabel::stable);
  CHECK(classify_torus_weights(W1, {true, false}).label ==
        StabilityLabel::unstable);
  Eigen::MatrixXi Wz(1, 1);
  Wz << 0;
  CHECK(classify_torus_weights(Wz, all(1)).label == StabilityLabel::semistable);

  // k = 2: triangle containing zero strictly.
  Eigen::MatrixXi Ws(3, 2);
  Ws << 1, 1, -1, 1, 0, -1;
  const TorusStabilityCertificate stable = classify_torus_weights(Ws, all(3));
  CHECK(stable.label == StabilityLabel::stable);
  CHECK(stable.min_slope > 0.0);

  // k = 2: zero on an edge of the hull.
  Eigen::MatrixXi Wb(3, 2);
  Wb << 1, 0, -1, 0, 0, 1;
  const TorusStabilityCertificate semi = classify_torus_weights(Wb, all(3));
  CHECK(semi.label == StabilityLabel::semistable);
  CHECK(std::abs(weight_slope(Wb, all(3), semi.witness.cast<double>())) == 0.0);

  // k = 2: hull in the open quadrant.
  Eigen::MatrixXi Wu(3, 2);
  Wu << 1, 0, 0, 1, 1, 1;
  const TorusStabilityCertificate uns = classify_torus_weights(Wu, all(3));
  CHECK(uns.label == StabilityLabel::unstable);
  CHECK(weight_slope(Wu, all(3), uns.witness.cast<double>()) < 0.0);

  // Fuzz: the certificate's internal cross-checks and the witness signs.
  Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const int k = 1 + static_cast<int>(rng.uniform_int(0, 2));
    const int n = 1 + static_cast<int>(rng.uniform_int(0, 5));
    Eigen::MatrixXi W(n, k);
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < k; ++l) {
        W(j, l) = static_cast<int>(rng.uniform_int(-4, 4));
      }
    }
    std::vector<bool> mask(n, false);
    int active = 0;
    for (int j = 0; j < n; ++j) {
      mask[j] = rng.uniform() > 0.25;
      if (mask[j]) ++active;
    }
    if (active == 0) mask[0] = true;

    const TorusStabilityCertificate cert = classify_torus_weights(W, mask);
    if (cert.label == StabilityLabel::unstable) {
      CHECK(weight_slope(W, mask, cert.witness.cast<double>()) < 0.0);
    } else if (cert.label == StabilityLabel::semistable) {
      CHECK(std::abs(weight_slope(W, mask, cert.witness.cast<double>())) == 0.0);
    } else {
      CHECK(cert.min_slope > 0.0);
    }
  }
}

TEST_CASE("sampled stability classification agrees with the certificate") {
  struct System {
    Eigen::MatrixXi W;
    Vector base;
  };
  std::vector<System> systems;
  {
    Eigen::MatrixXi W(2, 1);
    W << 1, -1;
    systems.push_back({W, vec2(1.0, 1.0)});
    systems.push_back({W, vec2(1.0, 0.0)});
  }
  {
    Eigen::MatrixXi W(3, 2);
    W << 1, 1, -1, 1, 0, -1;
    systems.push_back({W, vec3(1.0, 1.0, 1.0)});
  }
  {
    Eigen::MatrixXi W(3, 2);
    W << 1, 0, -1, 0, 0, 1;
    systems.push_back({W, vec3(1.0, 1.0, 1.0)});
  }
  {
    Eigen::MatrixXi W(3, 2);
    W << 1, 0, 0, 1, 1, 1;
    systems.push_back({W, vec3(1.0, 1.0, 1.0)});
  }

  Rng rng(31);
  for (int rep = 0; rep < 6; ++rep) {
    Eigen::MatrixXi W(4, 2);
    for (int j = 0; j < 4; ++j) {
      for (int l = 0; l < 2; ++l) {
        W(j, l) = static_cast<int>(rng.uniform_int(-3, 3));
      }
    }
    Vector base(4);
    int active = 0;
    for (int j = 0; j < 4; ++j) {
      if (rng.uniform() > 0.3) {
        base[j] = Complex(rng.normal(), rng.normal());
        if (std::abs(base[j]) > 1e-12) ++active;
      } else {
        base[j] = 0.0;
      }
    }
    if (active == 0) base[0] = 1.0;
    systems.push_back({W, base});
  }

  for (const System& sys : systems) {
    const CartanBundle b = torus_bundle(sys.W, sys.base);
    const std::vector<bool> mask = support_mask(b.base.v);
    const TorusStabilityCertificate cert = classify_torus_weights(sys.W, mask);

    const int k = static_cast<int>(sys.W.cols());
    std::vector<Matrix> dirs;
    for (const Eigen::VectorXi& s : integer_directions(k, 2)) {
      dirs.push_back(torus_direction(s.cast<double>()));
    }
    for (const Eigen::VectorXi& s : cert.candidates) {
      dirs.push_back(torus_direction(s.cast<double>()));
    }
    const StabilityReport report =
        classify_stability(b, b.identity_point(), dirs);
    CHECK(report.label == cert.label);
  }
}

TEST_CASE("energy descent finds momentum zeros, modulo the stabilizer") {
  Rng rng(41);

  // Balanced one-parameter system: the zero sits at the identity coset.
  {
    const CartanBundle b = torus_bundle(hyperbola_weights(), vec2(1.0, 1.0));
    const GroupElement start = b.ambient_exp(torus_direction(rvec1(0.7)));
    const MomentumZeroResult res = find_momentum_zero(b, start);
    CHECK(res.residual <= tols::zero_residual);
    CHECK(std::abs(quotient_invariant(res.point)(0, 0) - 1.0) < 1e-6);
  }

  // Defining orbit of the rank-one group: the momentum never vanishes and
  // the descent must flag divergence.
  {
    const CartanBundle b = sl2_bundle();
    CHECK_THROWS_AS(find_momentum_zero(b, b.identity_point(), 1e-8, 4000),
                    convergence_error);
  }

  // Two-parameter system with a flat stabilizer direction: zeros found from
  // different seeds agree after a right stabilizer move.
  {
    Eigen::MatrixXi W(3, 2);
    W << 1, 0, -1, 0, 0, 1;
    const CartanBundle b = torus_bundle(W, vec3(1.0, 1.0, 0.0));

    Matrix seed0 = Matrix::Zero(2, 2);
    seed0(0, 0) = 0.9;
    seed0(1, 1) = -1.3;
    Matrix seed1 = Matrix::Zero(2, 2);
    seed1(0, 0) = -0.8;
    seed1(1, 1) = 0.6;

    const MomentumZeroResult r0 = find_momentum_zero(b, b.ambient_exp(seed0));
    const MomentumZeroResult r1 = find_momentum_zero(b, b.ambient_exp(seed1));
    CHECK(r0.residual <= tols::zero_residual);
    CHECK(r1.residual <= tols::zero_residual);

    const StabilizerBasis sb = stabilizer_basis(b, b.identity_point());
    CHECK(sb.real_dim == 2);
    const double gap =
        stabilizer_orbit_gap(r0.point, r1.point, sb.basis, rng, 30);
    CHECK(gap < tols::uniqueness_defect);

    // A point off the zero set stays far away even after stabilizer moves.
    Matrix off = Matrix::Zero(2, 2);
    off(0, 0) = 0.5;
    const double far_gap = stabilizer_orbit_gap(
        r0.point, b.ambient_exp(off), sb.basis, rng, 10);
    CHECK(far_gap > 0.1);
  }
}
