#include "cartanlab/kempf_ness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "cartanlab/errors.hpp"
#include "cartanlab/numerics.hpp"

namespace cartanlab {

double kn_energy(const CartanBundle& b, const GroupElement& a) {
  const Vector u = b.action.grp(a.a) * b.base.v;
  const double n = u.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw domain_error("representation vector left the representable range");
  }
  return std::log(n);
}

double kn_rate(const CartanBundle& b, const GroupElement& a,
               const Matrix& zeta) {
  return kappa_a(b.klein, momentum_at(b, a), zeta);
}

double kn_derivative_defect(const CartanBundle& b, const GroupElement& a,
                            const Matrix& zeta, double h) {
  const GroupElement fwd{matrix_exp(h * zeta) * a.a, a.tag};
  const GroupElement bwd{matrix_exp(-h * zeta) * a.a, a.tag};
  const double fd = (kn_energy(b, fwd) - kn_energy(b, bwd)) / (2.0 * h);
  return std::abs(fd - kn_rate(b, a, zeta));
}

KnProfile kn_profile(const CartanBundle& b, const GroupElement& start,
                     const Matrix& xi, double t0, double t1, int samples,
                     double delta) {
  if (samples < 2) throw config_error("profile needs at least two samples");
  const Matrix zeta = b.apply_lambda_inverse(xi);
  auto rate_at = [&](double t) {
    return kn_rate(b, geodesic_point(b, start, xi, t), zeta);
  };

  KnProfile out;
  out.t.resize(samples);
  out.energy.resize(samples);
  out.energy_integrated.resize(samples);
  out.rate.resize(samples);
  out.curvature.resize(samples);
  const double dt = (t1 - t0) / (samples - 1);
  double acc = kn_energy(b, geodesic_point(b, start, xi, t0));
  for (int i = 0; i < samples; ++i) {
    const double t = t0 + i * dt;
    out.t[i] = t;
    out.energy[i] = kn_energy(b, geodesic_point(b, start, xi, t));
    out.rate[i] = rate_at(t);
    out.curvature[i] = (rate_at(t + delta) - rate_at(t - delta)) / (2.0 * delta);
    if (i > 0) acc += adaptive_simpson(rate_at, t - dt, t, 1e-12);
    out.energy_integrated[i] = acc;
    out.max_integration_gap = std::max(
        out.max_integration_gap, std::abs(out.energy[i] - out.energy_integrated[i]));
  }
  return out;
}

ConvexityReport kn_convexity(const CartanBundle& b, const GroupElement& start,
                             const Matrix& xi, double t0, double t1,
                             int samples, double delta) {
  if (samples < 1) throw config_error("convexity check needs samples");
  const Matrix zeta = b.apply_lambda_inverse(xi);
  if (fnorm(b.klein.decompose(zeta).first) > 1e-10 * (1.0 + fnorm(zeta))) {
    throw precondition_error(
        "convexity check needs a generator in the positive slice i*m");
  }
  auto rate_at = [&](double t) {
    return kn_rate(b, geodesic_point(b, start, xi, t), zeta);
  };

  ConvexityReport rep;
  rep.min_curvature = std::numeric_limits<double>::infinity();
  const double dt = samples > 1 ? (t1 - t0) / (samples - 1) : 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = t0 + i * dt;
    const GroupElement p = geodesic_point(b, start, xi, t);
    const double curv = (rate_at(t + delta) - rate_at(t - delta)) / (2.0 * delta);
    const double speed2 = metric_norm2(rho(b, xi, p));
    const double pairing = kappa_a(b.klein, calabi_operator(b, p, xi), zeta);
    rep.min_curvature = std::min(rep.min_curvature, curv);
    const double denom = 1.0 + std::abs(curv);
    rep.max_norm_gap = std::max(rep.max_norm_gap, std::abs(curv - speed2) / denom);
    rep.max_pairing_gap =
        std::max(rep.max_pairing_gap, std::abs(curv - pairing) / denom);
  }
  return rep;
}

double path_energy_integral(const CartanBundle& b, const GroupElement& start,
                            const std::vector<PathLeg>& legs, double quad_tol,
                            GroupElement* endpoint) {
  GroupElement p = start;
  double total = 0.0;
  for (const PathLeg& leg : legs) {
    auto f = [&](double t) {
      const GroupElement q{matrix_exp(t * leg.generator) * p.a, p.tag};
      return kappa_a(b.klein, momentum_at(b, q), leg.generator);
    };
    total += adaptive_simpson(f, 0.0, leg.duration, quad_tol);
    p = GroupElement{matrix_exp(leg.duration * leg.generator) * p.a, p.tag};
  }
  if (endpoint) *endpoint = p;
  return total;
}

double triangle_loop_defect(const CartanBundle& b, const Matrix& xi1,
                            const Matrix& xi2, double quad_tol) {
  const GroupElement e = b.identity_point();
  const GroupElement p2{matrix_exp(xi2) * matrix_exp(xi1), e.tag};
  const auto [h, u] = polar_decompose(p2);

  std::vector<PathLeg> legs;
  legs.push_back(PathLeg{xi1, 1.0});
  legs.push_back(PathLeg{xi2, 1.0});
  legs.push_back(PathLeg{Matrix(-h.m), 1.0});

  GroupElement end = e;
  const double total = path_energy_integral(b, e, legs, quad_tol, &end);
  if (fnorm(end.a - u.a) > 1e-8 * (1.0 + fnorm(u.a))) {
    throw precondition_error("triangle legs failed to close onto the unitary factor");
  }
  return std::abs(total);
}

SlopeResult kn_slope(const CartanBundle& b, const GroupElement& start,
                     const Matrix& xi, int max_doublings, double plateau_tol) {
  const Matrix zeta = b.apply_lambda_inverse(xi);
  const Vector u0 = b.action.grp(start.a) * b.base.v;
  // q tracks the ray at time 2^k in representation space; renormalizing the
  // matrix changes the orbit point only projectively, so no overflow occurs.
  Matrix q = b.action.grp(matrix_exp(zeta));
  auto rate_of = [&](const Matrix& qk) {
    const ProjectivePoint m = ProjectivePoint::from(qk * u0);
    return kappa_a(b.klein, momentum(b.action, m).value, zeta);
  };
  double prev = rate_of(q);
  for (int k = 1; k <= max_doublings; ++k) {
    q = Matrix(q * q);
    const double scale = q.cwiseAbs().maxCoeff();
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw convergence_error("ray left the representable range");
    }
    q /= scale;
    const double cur = rate_of(q);
    const double gap = std::abs(cur - prev);
    if (gap <= plateau_tol * (1.0 + std::abs(cur))) {
      return SlopeResult{cur, k, gap};
    }
    prev = cur;
  }
  throw convergence_error("slope did not reach a plateau");
}

StabilityReport classify_stability(const CartanBundle& b,
                                   const GroupElement& start,
                                   const std::vector<Matrix>& directions,
                                   double zero_tol, int max_doublings,
                                   double plateau_tol) {
  if (directions.empty()) throw config_error("no ray directions supplied");
  StabilityReport rep;
  rep.min_slope = std::numeric_limits<double>::infinity();
  bool any_zero = false;
  for (const Matrix& dir : directions) {
    const double n = fnorm(dir);
    if (!(n > 0.0)) throw precondition_error("zero ray direction");
    const Matrix unit = dir / n;
    const SlopeResult s = kn_slope(b, start, unit, max_doublings, plateau_tol);
    if (s.slope < rep.min_slope) {
      rep.min_slope = s.slope;
      rep.worst_direction = unit;
    }
    if (std::abs(s.slope) <= zero_tol) any_zero = true;
    ++rep.directions_checked;
  }
  if (rep.min_slope < -zero_tol) {
    rep.label = StabilityLabel::unstable;
  } else if (any_zero) {
    rep.label = StabilityLabel::semistable;
  } else {
    rep.label = StabilityLabel::stable;
  }
  return rep;
}

Matrix torus_direction(const RealVector& s) {
  Matrix d = Matrix::Zero(s.size(), s.size());
  for (int l = 0; l < s.size(); ++l) d(l, l) = Complex(s[l], 0.0);
  return d;
}

std::vector<Eigen::VectorXi> integer_directions(int dim, int radius) {
  if (dim < 1 || radius < 1) throw config_error("need dim >= 1 and radius >= 1");
  const int base = 2 * radius + 1;
  long total = 1;
  for (int i = 0; i < dim; ++i) {
    total *= base;
    if (total > 2000000) throw config_error("direction grid too large");
  }
  std::vector<Eigen::VectorXi> out;
  for (long code = 0; code < total; ++code) {
    Eigen::VectorXi v(dim);
    long rest = code;
    int g = 0;
    for (int i = 0; i < dim; ++i) {
      v[i] = static_cast<int>(rest % base) - radius;
      rest /= base;
      g = std::gcd(g, std::abs(v[i]));
    }
    if (g == 1) out.push_back(std::move(v));
  }
  return out;
}

MomentumZeroResult find_momentum_zero(const CartanBundle& b,
                                      const GroupElement& start, double tol,
                                      int max_iterations) {
  const std::vector<Matrix>& basis_m = b.klein.basis_m;
  const int d = static_cast<int>(basis_m.size());
  if (d == 0) throw config_error("no positive slice to descend along");
  RealMatrix gram(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) gram(i, j) = kappa(basis_m[i], basis_m[j]);
  }
  const Eigen::LDLT<RealMatrix> gram_ldlt(gram);
  if (gram_ldlt.info() != Eigen::Success) {
    throw degeneracy_error("pairing degenerate on the positive slice");
  }

  const int sz = b.klein.matrix_size();
  GroupElement a = start;
  double energy = kn_energy(b, a);
  double step = 1.0;
  for (int it = 1; it <= max_iterations; ++it) {
    const Matrix mu = momentum_at(b, a);
    RealVector g(d);
    for (int i = 0; i < d; ++i) g[i] = -kappa(mu, basis_m[i]);
    const RealVector c = gram_ldlt.solve(g);
    const double decrease = g.dot(c);
    const double residual = std::sqrt(std::max(0.0, decrease));
    if (residual <= tol) return MomentumZeroResult{a, residual, it - 1};

    Matrix dir = Matrix::Zero(sz, sz);
    for (int i = 0; i < d; ++i) dir -= c[i] * (Complex(0.0, 1.0) * basis_m[i]);
    bool accepted = false;
    for (int half = 0; half < 60 && !accepted; ++half) {
      const GroupElement cand{matrix_exp(step * dir) * a.a, a.tag};
      const double cand_energy = kn_energy(b, cand);
      if (cand_energy <= energy - 1e-4 * step * decrease) {
        a = cand;
        energy = cand_energy;
        accepted = true;
        if (half == 0) step = std::min(step * 2.0, 16.0);
      } else {
        step *= 0.5;
      }
    }
    if (!accepted) {
      throw convergence_error("line search stalled before reaching a zero");
    }
    if (a.a.norm() > 1e100) {
      throw convergence_error("descent diverged: no zero on this orbit closure");
    }
  }
  throw convergence_error("descent exhausted its iteration budget");
}

Matrix quotient_invariant(const GroupElement& a) { return a.a.adjoint() * a.a; }

double stabilizer_orbit_gap(const GroupElement& p0, const GroupElement& p1,
                            const std::vector<Matrix>& stabilizer_dirs,
                            Rng& rng, int restarts) {
  const Matrix b0 = quotient_invariant(p0);
  const double scale = 1.0 + b0.norm();
  const int d = static_cast<int>(stabilizer_dirs.size());
  auto objective = [&](const RealVector& c) {
    Matrix z = Matrix::Zero(p1.a.rows(), p1.a.cols());
    for (int i = 0; i < d; ++i) z += c[i] * stabilizer_dirs[i];
    const Matrix moved = p1.a * matrix_exp(z);
    return (b0 - moved.adjoint() * moved).norm() / scale;
  };
  if (d == 0) return objective(RealVector());

  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    RealVector c = RealVector::Zero(d);
    if (r > 0) {
      for (int i = 0; i < d; ++i) c[i] = rng.normal() * 2.0;
    }
    double cur = objective(c);
    for (int sweep = 0; sweep < 30; ++sweep) {
      double improved = 0.0;
      for (int i = 0; i < d; ++i) {
        double delta = 0.5;
        while (delta > 1e-11) {
          bool moved = false;
          for (double sgn : {1.0, -1.0}) {
            RealVector cc = c;
            cc[i] += sgn * delta;
            const double val = objective(cc);
            if (val < cur - 1e-15) {
              improved += cur - val;
              cur = val;
              c = cc;
              moved = true;
              break;
            }
          }
          if (!moved) delta *= 0.5;
        }
      }
      if (improved < 1e-14) break;
    }
    best = std::min(best, cur);
  }
  return best;
}

}  // namespace cartanlab
