#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "cartanlab/errors.hpp"
#include "cartanlab/kahler_cp1.hpp"
#include "cartanlab/numerics.hpp"
#include "cartanlab/rng.hpp"
#include "cartanlab/tolerances.hpp"

using namespace cartanlab;

namespace {

SymplecticPotential1D make_potential(int n,
                                     const std::function<double(double)>& f) {
  RealVector s(n + 1);
  for (int i = 0; i <= n; ++i) s[i] = f(-1.0 + 2.0 * double(i) / n);
  return SymplecticPotential1D::from_correction(std::move(s));
}

double quartic_bump(double x) {
  return (1.0 - x * x) * (1.0 - x * x);
}

SymplecticPotential1D standard_perturbed(int n, double eps = 0.05) {
  return make_potential(n, [&](double x) { return eps * quartic_bump(x); });
}

SymplecticPotential1D random_potential(int n, Rng& rng, double scale) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    const double c0 = rng.uniform(-scale, scale);
    const double c1 = rng.uniform(-scale, scale);
    const double c2 = rng.uniform(-scale, scale);
    const double c3 = rng.uniform(-scale, scale);
    try {
      return make_potential(n, [&](double x) {
        return quartic_bump(x) *
               (c0 + c1 * x + c2 * x * x + c3 * std::sin(3.0 * x));
      });
    } catch (const domain_error&) {
    }
  }
  throw std::runtime_error("no admissible random correction found");
}

std::vector<SymplecticPotential1D> segment_path(
    const SymplecticPotential1D& a, const SymplecticPotential1D& b,
    int samples, const std::function<double(double)>& clock) {
  std::vector<SymplecticPotential1D> path;
  for (int k = 0; k <= samples; ++k)
    path.push_back(toric_geodesic(a, b, clock(double(k) / samples)));
  return path;
}

}  // namespace

TEST_CASE("the reference potential is the round metric") {
  const auto ref = SymplecticPotential1D::reference(512);
  const RealVector curv = scalar_curvature(ref);
  for (int i = 0; i <= ref.segments(); ++i)
    CHECK(std::abs(curv[i] - 2.0) < tols::fs_scalar);
  CHECK(std::abs(average_scalar(ref) - 2.0) < tols::fs_scalar);
  CHECK(std::abs(futaki_cp1(ref)) < 1e-10);
  CHECK(std::abs(k_energy_closed(ref)) < 1e-14);

  const KEnergyValue ct = k_energy_chentian(ref);
  CHECK(std::abs(ct.value) < 1e-10);
  CHECK(std::abs(ct.entropy) < 1e-10);
  CHECK(std::abs(ct.volume_energy) < 1e-10);
  CHECK(std::abs(ct.ricci_energy) < 1e-10);

  const std::vector<SymplecticPotential1D> constant(9, ref);
  CHECK(std::abs(k_energy_kempf1(constant)) < 1e-14);
}

TEST_CASE("membership requires convexity and a usable grid") {
  CHECK_THROWS_AS(make_potential(256, [](double x) { return -2.0 * x * x; }),
                  domain_error);
  RealVector odd(10);
  odd.setZero();
  CHECK_THROWS_AS(SymplecticPotential1D::from_correction(odd), domain_error);
}

TEST_CASE("curvature totals are topological") {
  for (const double eps : {0.01, 0.03, 0.05}) {
    const auto u = standard_perturbed(512, eps);
    const RealVector curv = scalar_curvature(u);
    CHECK(std::abs(simpson_uniform(curv, u.h()) - 4.0) <
          tols::cp1_total_curvature);
  }
  Rng rng(901);
  for (int rep = 0; rep < 5; ++rep) {
    const auto u = random_potential(512, rng, 0.04);
    CHECK(std::abs(simpson_uniform(scalar_curvature(u), u.h()) - 4.0) <
          tols::cp1_total_curvature);
  }

  // deviation from the round curvature scales linearly in the perturbation
  const auto big = scalar_curvature(standard_perturbed(512, 0.05));
  const auto small = scalar_curvature(standard_perturbed(512, 0.001));
  const double dev_big = (big.array() - 2.0).abs().maxCoeff();
  const double dev_small = (small.array() - 2.0).abs().maxCoeff();
  CHECK(dev_small < 3.0 * (0.001 / 0.05) * dev_big);
  CHECK(dev_big > 1e-3);
}

TEST_CASE("the character integral vanishes across the class") {
  Rng rng(902);
  for (int rep = 0; rep < 20; ++rep) {
    const auto u = random_potential(512, rng, 0.04);
    CHECK(std::abs(futaki_cp1(u)) < tols::cp1_futaki);
  }
}

TEST_CASE("energy oracles agree") {
  const int n = 512;
  const auto ref = SymplecticPotential1D::reference(n);
  const auto target = standard_perturbed(n);

  const double closed = k_energy_closed(target);
  CHECK(closed > 0.0);

  const auto linear = segment_path(ref, target, 40, [](double t) { return t; });
  const double lin = k_energy_kempf1(linear);
  CHECK(std::abs(lin - closed) < tols::kempf1_path);

  // smooth reparametrization of the same segment: same endpoints, same value
  const auto bent = segment_path(ref, target, 40, [](double t) {
    return t * t * (3.0 - 2.0 * t);
  });
  const double rep = k_energy_kempf1(bent);
  CHECK(std::abs(rep - lin) < tols::kempf1_path);

  const KEnergyValue ct = k_energy_chentian(target);
  CHECK(std::abs(ct.value - closed) / (1.0 + std::abs(closed)) <
        tols::chentian_rel);
  CHECK(std::abs(ct.value -
                 (ct.entropy + ct.volume_energy + ct.ricci_energy)) < 1e-10);

  // the reference is the minimizer
  Rng rng(903);
  for (int rep2 = 0; rep2 < 5; ++rep2)
    CHECK(k_energy_closed(random_potential(n, rng, 0.04)) > 0.0);
}

TEST_CASE("path energy rejects bad input") {
  const int n = 256;
  const auto ref = SymplecticPotential1D::reference(n);
  const auto target = standard_perturbed(n);

  auto path = segment_path(ref, target, 8, [](double t) { return t; });
  path[4].s *= 40.0;  // wreck convexity mid-path
  CHECK_THROWS_AS(k_energy_kempf1(path), domain_error);

  std::vector<SymplecticPotential1D> short_path(3, ref);
  CHECK_THROWS_AS(k_energy_kempf1(short_path), domain_error);

  CHECK_THROWS_AS(toric_geodesic(ref, target, 1.5), precondition_error);
  CHECK_THROWS_AS(
      toric_geodesic(ref, SymplecticPotential1D::reference(128), 0.5),
      domain_error);
}

TEST_CASE("legendre duality round-trips") {
  const auto ref = SymplecticPotential1D::reference(512);
  const KahlerPotential1D dual_ref = kahler_potential(ref);
  CHECK(legendre_roundtrip(ref, dual_ref) < tols::legendre_roundtrip);

  Rng rng(904);
  for (int rep = 0; rep < 3; ++rep) {
    const auto u = random_potential(512, rng, 0.04);
    const KahlerPotential1D dual = kahler_potential(u);
    CHECK(legendre_roundtrip(u, dual) < tols::legendre_roundtrip);
    for (int k = 1; k < dual.slope.size(); ++k)
      REQUIRE(dual.slope[k] >= dual.slope[k - 1]);
  }
}

TEST_CASE("segments are energy-convex and satisfy the dual equation") {
  const int n = 256;
  Rng rng(905);

  for (int rep = 0; rep < 20; ++rep) {
    const auto a = random_potential(n, rng, 0.035);
    const auto b = random_potential(n, rng, 0.035);
    std::vector<double> energy;
    for (int k = 0; k <= 20; ++k)
      energy.push_back(k_energy_closed(toric_geodesic(a, b, k / 20.0)));
    for (int k = 1; k < 20; ++k) {
      const double second = energy[k + 1] - 2.0 * energy[k] + energy[k - 1];
      CHECK(second >= tols::kenergy_convexity_floor);
    }
  }

  CHECK((toric_geodesic(SymplecticPotential1D::reference(n),
                        standard_perturbed(n), 0.0)
             .s.array() == 0.0)
            .all());

  // second-order convergence of the dual-path residual under grid refinement
  const auto f0 = [](double x) { return 0.05 * quartic_bump(x); };
  const auto f1 = [](double x) {
    return quartic_bump(x) * (-0.03 + 0.04 * x + 0.02 * std::sin(3.0 * x));
  };
  const double coarse =
      geodesic_residual(make_potential(256, f0), make_potential(256, f1));
  const double fine =
      geodesic_residual(make_potential(512, f0), make_potential(512, f1));
  CHECK(fine > 0.0);
  const double ratio = coarse / fine;
  CHECK(ratio > tols::cp1_residual_ratio_low);
  CHECK(ratio < tols::cp1_residual_ratio_high);
}

TEST_CASE("energy descent reaches the round metric") {
  const int n = 256;

  // the reference is already critical
  const DescentResult at_ref =
      k_energy_descent(SymplecticPotential1D::reference(n));
  CHECK(at_ref.converged);
  CHECK(at_ref.trajectory.size() == 1);
  CHECK(at_ref.trajectory[0].sup_defect < 1e-10);

  const DescentResult run = k_energy_descent(standard_perturbed(n));
  CHECK(run.converged);
  CHECK(int(run.trajectory.size()) <= 500);
  CHECK(run.trajectory.back().sup_defect < tols::descent_sup);
  for (size_t k = 1; k < run.trajectory.size(); ++k)
    CHECK(run.trajectory[k].energy <=
          run.trajectory[k - 1].energy + tols::descent_monotonicity);
  CHECK(run.trajectory.back().energy < run.trajectory.front().energy);
  CHECK(run.trajectory.back().energy > -1e-10);

  CHECK_THROWS_AS(k_energy_descent(standard_perturbed(n), -1.0),
                  precondition_error);
}
