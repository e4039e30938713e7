#include "cartanlab/kahler_cp1.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

#include "cartanlab/errors.hpp"
#include "cartanlab/numerics.hpp"

namespace cartanlab {

namespace {

double xlogx(double t) { return t > 0.0 ? t * std::log(t) : 0.0; }

double reference_potential(double x) {
  return 0.5 * (xlogx(1.0 + x) + xlogx(1.0 - x));
}

// subtract the linear interpolant through the endpoint values; the energy is
// invariant under affine shifts, so this fixes the gauge s(-1) = s(1) = 0
RealVector endpoint_gauge(const RealVector& f) {
  const int n = static_cast<int>(f.size()) - 1;
  RealVector out(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = double(i) / n;
    out[i] = f[i] - (1.0 - t) * f[0] - t * f[n];
  }
  return out;
}

}  // namespace

SymplecticPotential1D SymplecticPotential1D::reference(int n) {
  SymplecticPotential1D u;
  u.s = RealVector::Zero(n + 1);
  u.validate();
  return u;
}

SymplecticPotential1D SymplecticPotential1D::from_correction(
    RealVector values) {
  SymplecticPotential1D u;
  u.s = std::move(values);
  u.validate();
  return u;
}

RealVector SymplecticPotential1D::d1(int order) const {
  const double hh = h();
  if (order == 2) {  // classic three-point stencils, second order exactly
    const int n = segments();
    RealVector out(n + 1);
    out[0] = (-3.0 * s[0] + 4.0 * s[1] - s[2]) / (2.0 * hh);
    for (int i = 1; i < n; ++i) out[i] = (s[i + 1] - s[i - 1]) / (2.0 * hh);
    out[n] = (3.0 * s[n] - 4.0 * s[n - 1] + s[n - 2]) / (2.0 * hh);
    return out;
  }
  return fd_derivative(s, hh, 1, order);
}

RealVector SymplecticPotential1D::d2(int order) const {
  const double hh = h();
  if (order == 2) {
    const int n = segments();
    RealVector out(n + 1);
    const double h2 = hh * hh;
    out[0] = (2.0 * s[0] - 5.0 * s[1] + 4.0 * s[2] - s[3]) / h2;
    for (int i = 1; i < n; ++i)
      out[i] = (s[i + 1] - 2.0 * s[i] + s[i - 1]) / h2;
    out[n] = (2.0 * s[n] - 5.0 * s[n - 1] + 4.0 * s[n - 2] - s[n - 3]) / h2;
    return out;
  }
  return fd_derivative(s, hh, 2, order);
}

RealVector SymplecticPotential1D::boundary_weight() const {
  const RealVector s2 = d2();
  const int n = segments();
  RealVector w(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double xi = x(i);
    w[i] = 1.0 + (1.0 - xi * xi) * s2[i];
  }
  return w;
}

void SymplecticPotential1D::validate() const {
  const int n = segments();
  if (n < 8 || n % 2 != 0)
    throw domain_error("potential grid needs an even segment count >= 8");
  if (!s.allFinite()) throw domain_error("potential values must be finite");
  const RealVector w = boundary_weight();
  for (int i = 0; i <= n; ++i) {
    if (!(w[i] > 0.0))
      throw domain_error("potential is not convex at node " +
                         std::to_string(i));
  }
}

PotentialEval::PotentialEval(const SymplecticPotential1D& u, int order)
    : pot_(&u), s1_(u.d1(order)), s2_(u.d2(order)) {}

double PotentialEval::s(double x) const {
  return interp_cubic(pot_->s, -1.0, pot_->h(), x);
}

double PotentialEval::s1(double x) const {
  return interp_cubic(s1_, -1.0, pot_->h(), x);
}

double PotentialEval::s2(double x) const {
  return interp_cubic(s2_, -1.0, pot_->h(), x);
}

double PotentialEval::u(double x) const { return reference_potential(x) + s(x); }

double PotentialEval::u1(double x) const { return std::atanh(x) + s1(x); }

double PotentialEval::w(double x) const {
  return 1.0 + (1.0 - x * x) * s2(x);
}

double PotentialEval::inverse_slope(double y) const {
  const double edge = 1.0 - 1e-14;
  if (y >= u1(edge)) return 1.0;
  if (y <= u1(-edge)) return -1.0;
  double lo = -edge, hi = edge;
  // Newton on u'(x) - y with bisection safeguard; u'' > 0 makes this robust
  double x = std::tanh(y - s1(std::tanh(y)));
  x = std::clamp(x, lo, hi);
  for (int it = 0; it < 80; ++it) {
    const double f = u1(x) - y;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    const double slope = 1.0 / (1.0 - x * x) + s2(x);
    double next = x - f / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-16 * (1.0 + std::abs(x))) return next;
    x = next;
  }
  return x;
}

double PotentialEval::dual(double y) const {
  const double x = inverse_slope(y);
  return x * y - u(x);
}

double PotentialEval::dual_second(double y) const {
  const double x = inverse_slope(y);
  return (1.0 - x * x) / w(x);
}

RealVector scalar_curvature(const SymplecticPotential1D& u) {
  u.validate();
  const RealVector w = u.boundary_weight();
  const int n = u.segments();
  RealVector g(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double xi = u.x(i);
    g[i] = (1.0 - xi * xi) / w[i];
  }
  return -fd_derivative(g, u.h(), 2, 4);
}

double average_scalar(const SymplecticPotential1D& u) {
  return simpson_uniform(scalar_curvature(u), u.h()) / 2.0;
}

double futaki_cp1(const SymplecticPotential1D& u) {
  const RealVector curv = scalar_curvature(u);
  const double s0 = simpson_uniform(curv, u.h()) / 2.0;
  const int n = u.segments();
  RealVector integrand(n + 1);
  for (int i = 0; i <= n; ++i) integrand[i] = (curv[i] - s0) * u.x(i);
  return -simpson_uniform(integrand, u.h());
}

double k_energy_kempf1(const std::vector<SymplecticPotential1D>& path) {
  const int m = static_cast<int>(path.size()) - 1;
  if (m < 4 || m % 2 != 0)
    throw domain_error("path needs an even sample count >= 5");
  const int n = path[0].segments();
  for (const auto& u : path) {
    if (u.segments() != n) throw domain_error("path mixes grid sizes");
    u.validate();
  }
  const double dt = 1.0 / m;

  // time derivative of the correction at every node, 4th order in t
  RealMatrix udot(m + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    RealVector series(m + 1);
    for (int k = 0; k <= m; ++k) series[k] = path[k].s[i];
    udot.col(i) = fd_derivative(series, dt, 1, 4);
  }

  RealVector slice(m + 1);
  for (int k = 0; k <= m; ++k) {
    const RealVector curv = scalar_curvature(path[k]);
    const double s0 = simpson_uniform(curv, path[k].h()) / 2.0;
    RealVector integrand(n + 1);
    for (int i = 0; i <= n; ++i)
      integrand[i] = udot(k, i) * (curv[i] - s0);
    slice[k] = simpson_uniform(integrand, path[k].h());
  }
  return simpson_uniform(slice, dt);
}

double k_energy_closed(const SymplecticPotential1D& u) {
  u.validate();
  const RealVector w = u.boundary_weight();
  const int n = u.segments();
  // the boundary terms of the path integral combine with -Int log w into a
  // single integrand w - 1 - log w, nonnegative with equality only at w = 1
  RealVector nodes(n + 1);
  for (int i = 0; i <= n; ++i) nodes[i] = w[i] - 1.0 - std::log(w[i]);
  return simpson_uniform(nodes, u.h());
}

KEnergyValue k_energy_chentian(const SymplecticPotential1D& u,
                               double y_halfwidth, int y_samples) {
  u.validate();
  if (y_samples < 8 || y_samples % 2 != 0)
    throw domain_error("dual quadrature needs an even sample count >= 8");
  const PotentialEval ev(u);
  const int n = u.segments();
  const double h = u.h();

  // entropy of the measure ratio, written without the divergent slopes:
  // log(phi''/phi_ref'') = log((1 + x tanh s')^2 / (w sech^2 s'))
  const RealVector s1 = u.d1();
  const RealVector w = u.boundary_weight();
  RealVector ent_nodes(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double xi = u.x(i);
    const double t = std::tanh(s1[i]);
    const double sech2 = 1.0 - t * t;
    const double ratio = (1.0 + xi * t) * (1.0 + xi * t) / (w[i] * sech2);
    ent_nodes[i] = std::log(ratio);
  }
  const double ent = simpson_uniform(ent_nodes, h);

  // volume and Ricci energies as dual-variable quadratures of the relative
  // potential against the two volume densities
  const double hy = 2.0 * y_halfwidth / y_samples;
  RealVector vol_nodes(y_samples + 1), ric_nodes(y_samples + 1);
  for (int k = 0; k <= y_samples; ++k) {
    const double y = -y_halfwidth + k * hy;
    const double x_ref = std::tanh(y);
    const double ref_density = 1.0 - x_ref * x_ref;  // sech^2 y
    const double phi_ref = x_ref * y - reference_potential(x_ref);
    const double rel = ev.dual(y) - phi_ref;
    ric_nodes[k] = rel * ref_density;
    vol_nodes[k] = 0.5 * rel * (ref_density + ev.dual_second(y));
  }
  const double am = simpson_uniform(vol_nodes, hy);
  const double iric = simpson_uniform(ric_nodes, hy);

  KEnergyValue out;
  out.entropy = ent;
  out.volume_energy = 2.0 * am;
  out.ricci_energy = -2.0 * iric;
  out.value = out.entropy + out.volume_energy + out.ricci_energy;
  return out;
}

SymplecticPotential1D toric_geodesic(const SymplecticPotential1D& u0,
                                     const SymplecticPotential1D& u1,
                                     double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw precondition_error("segment parameter must lie in [0, 1]");
  if (u0.segments() != u1.segments())
    throw domain_error("segment endpoints use different grids");
  return SymplecticPotential1D::from_correction((1.0 - t) * u0.s + t * u1.s);
}

double geodesic_residual(const SymplecticPotential1D& u0,
                         const SymplecticPotential1D& u1, int probes,
                         double y_halfwidth) {
  if (probes < 2) throw domain_error("need at least two probe positions");
  const double dt = 0.02;
  const double hy = 2.5e-4;
  const double times[3] = {0.3, 0.5, 0.7};

  double worst = 0.0;
  for (double tc : times) {
    // five time samples around tc; second-order stencils in the grid data so
    // the spatial representation dominates the error budget
    std::vector<PotentialEval> evs;
    std::vector<SymplecticPotential1D> pots;
    pots.reserve(5);
    for (int j = -2; j <= 2; ++j)
      pots.push_back(toric_geodesic(u0, u1, tc + j * dt));
    for (const auto& p : pots) evs.emplace_back(p, 2);

    for (int q = 0; q < probes; ++q) {
      const double y =
          -y_halfwidth + 2.0 * y_halfwidth * q / (probes - 1);
      double phi[5], phi_lo[5], phi_hi[5];
      for (int j = 0; j < 5; ++j) {
        phi[j] = evs[j].dual(y);
        phi_lo[j] = evs[j].dual(y - hy);
        phi_hi[j] = evs[j].dual(y + hy);
      }
      const double accel = (-phi[0] + 16.0 * phi[1] - 30.0 * phi[2] +
                            16.0 * phi[3] - phi[4]) /
                           (12.0 * dt * dt);
      const auto rate = [&](const double* f) {
        return (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * dt);
      };
      const double rate_slope = (rate(phi_hi) - rate(phi_lo)) / (2.0 * hy);
      const double second = evs[2].dual_second(y);
      worst = std::max(worst,
                       std::abs(accel - rate_slope * rate_slope / second));
    }
  }
  return worst;
}

KahlerPotential1D kahler_potential(const SymplecticPotential1D& u,
                                   double y_halfwidth, double y_step) {
  u.validate();
  const PotentialEval ev(u);
  // widen until the tabulated slopes cover every interior node
  const double need = std::max(std::abs(ev.u1(u.x(1))),
                               std::abs(ev.u1(u.x(u.segments() - 1))));
  const double span = std::max(y_halfwidth, need + 0.5);
  const int count = static_cast<int>(std::ceil(2.0 * span / y_step)) + 1;

  KahlerPotential1D out;
  out.y.resize(count);
  out.phi.resize(count);
  out.slope.resize(count);
  for (int k = 0; k < count; ++k) {
    const double y = -span + k * y_step;
    const double x = ev.inverse_slope(y);
    out.y[k] = y;
    out.slope[k] = x;
    out.phi[k] = x * y - ev.u(x);
  }
  return out;
}

double legendre_roundtrip(const SymplecticPotential1D& u,
                          const KahlerPotential1D& dual) {
  const PotentialEval ev(u);
  const int n = u.segments();
  const int count = static_cast<int>(dual.y.size());
  const double y0 = dual.y[0];
  const double hy = dual.y[1] - dual.y[0];

  double worst = 0.0;
  for (int i = 1; i < n; ++i) {
    const double xi = u.x(i);
    // bracket xi in the monotone slope table, then refine y* by Newton on
    // the interpolated slope
    int lo = 0, hi = count - 1;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      if (dual.slope[mid] < xi)
        lo = mid;
      else
        hi = mid;
    }
    double y = dual.y[lo];
    for (int it = 0; it < 60; ++it) {
      const double sl = interp_cubic(dual.slope, y0, hy, y);
      const double dsl = (interp_cubic(dual.slope, y0, hy, y + 0.5 * hy) -
                          interp_cubic(dual.slope, y0, hy, y - 0.5 * hy)) /
                         hy;
      if (dsl <= 0.0) break;
      const double next = y - (sl - xi) / dsl;
      if (std::abs(next - y) < 1e-15 * (1.0 + std::abs(y))) {
        y = next;
        break;
      }
      y = next;
    }
    const double back = xi * y - interp_cubic(dual.phi, y0, hy, y);
    worst = std::max(worst, std::abs(back - ev.u(xi)));
  }
  return worst;
}

DescentResult k_energy_descent(const SymplecticPotential1D& u0, double step,
                               int iters, double sup_tol) {
  u0.validate();
  if (!(step > 0.0)) throw precondition_error("step must be positive");
  const int n = u0.segments();
  const double h = u0.h();

  // reference Hessian model: quadratic form Int (1-x^2)^2 (d^2 f)^2 dx,
  // assembled from interior second differences and reduced to the interior
  // nodes of the endpoint gauge slice, where it is positive definite
  RealMatrix d2 = RealMatrix::Zero(n - 1, n + 1);
  RealVector wq(n - 1);
  for (int i = 1; i < n; ++i) {
    d2(i - 1, i - 1) = 1.0 / (h * h);
    d2(i - 1, i) = -2.0 / (h * h);
    d2(i - 1, i + 1) = 1.0 / (h * h);
    const double xi = -1.0 + i * h;
    wq[i - 1] = h * (1.0 - xi * xi) * (1.0 - xi * xi);
  }
  const RealMatrix hess = (d2.transpose() * wq.asDiagonal() * d2)
                              .block(1, 1, n - 1, n - 1);
  const Eigen::LDLT<RealMatrix> solver(hess);

  DescentResult out;
  out.potential = u0;
  out.potential.s = endpoint_gauge(out.potential.s);

  // exact gradient of the endpoint energy: adjoint of the node second
  // derivative operator against the quadrature-weighted 1 - 1/w
  RealMatrix d2full(n + 1, n + 1);
  for (int j = 0; j <= n; ++j) {
    RealVector basis = RealVector::Zero(n + 1);
    basis[j] = 1.0;
    d2full.col(j) = fd_derivative(basis, h, 2, 4);
  }
  RealVector simw(n + 1);
  for (int i = 0; i <= n; ++i)
    simw[i] = (i == 0 || i == n) ? h / 3.0
                                 : (i % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);

  double energy = k_energy_closed(out.potential);
  for (int iter = 0; iter <= iters; ++iter) {
    const RealVector curv = scalar_curvature(out.potential);
    const double s0 = simpson_uniform(curv, h) / 2.0;
    const double sup = (curv.array() - s0).abs().maxCoeff();
    out.trajectory.push_back(DescentRow{iter, energy, sup});
    if (sup < sup_tol) {
      out.converged = true;
      return out;
    }
    if (iter == iters) break;

    const RealVector w = out.potential.boundary_weight();
    RealVector cell(n + 1);
    for (int i = 0; i <= n; ++i) {
      const double xi = -1.0 + i * h;
      cell[i] = simw[i] * (1.0 - xi * xi) * (1.0 - 1.0 / w[i]);
    }
    const RealVector grad = d2full.transpose() * cell;

    RealVector dir = RealVector::Zero(n + 1);
    dir.segment(1, n - 1) = solver.solve(grad.segment(1, n - 1));
    const double decrease = grad.segment(1, n - 1).dot(dir.segment(1, n - 1));
    if (!(decrease > 0.0))
      throw convergence_error("descent direction lost positivity");

    double alpha = step;
    bool accepted = false;
    for (int half = 0; half < 50; ++half) {
      SymplecticPotential1D trial;
      trial.s = out.potential.s - alpha * dir;
      try {
        trial.validate();
      } catch (const domain_error&) {
        alpha *= 0.5;
        continue;
      }
      const double trial_energy = k_energy_closed(trial);
      if (trial_energy <= energy - 1e-4 * alpha * decrease) {
        out.potential = trial;
        energy = trial_energy;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted)
      throw convergence_error("energy line search failed at iteration " +
                              std::to_string(iter));
  }
  return out;
}

}  // namespace cartanlab
