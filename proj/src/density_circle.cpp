#include "cartanlab/density_circle.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "cartanlab/errors.hpp"

namespace cartanlab {

namespace {

// Real trigonometric interpolant of periodic node data on [0, 2pi): mean,
// full cosine/sine modes up to N/2 - 1, and the symmetric Nyquist cosine.
// Fitting is a plain O(N^2) sum; evaluation walks the modes with the angle
// recurrence, so no per-mode transcendentals.
struct TrigSeries {
  RealVector cosc;  // k = 0 .. N/2
  RealVector sinc;  // k = 1 .. N/2 - 1, stored at index k
  int n = 0;

  static TrigSeries fit(const RealVector& v) {
    TrigSeries s;
    s.n = static_cast<int>(v.size());
    const int nh = s.n / 2;
    s.cosc = RealVector::Zero(nh + 1);
    s.sinc = RealVector::Zero(nh + 1);
    const double step = 2.0 * kPi / s.n;
    for (int j = 0; j < s.n; ++j) {
      const double x = j * step;
      const double c1 = std::cos(x), s1 = std::sin(x);
      double ck = 1.0, sk = 0.0;  // cos(k x), sin(k x) starting at k = 0
      for (int k = 0; k <= nh; ++k) {
        s.cosc[k] += v[j] * ck;
        s.sinc[k] += v[j] * sk;
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
      }
    }
    s.cosc[0] /= s.n;
    for (int k = 1; k < nh; ++k) {
      s.cosc[k] *= 2.0 / s.n;
      s.sinc[k] *= 2.0 / s.n;
    }
    s.cosc[nh] /= s.n;
    s.sinc[nh] = 0.0;
    return s;
  }

  // value, first and second derivative of the interpolant at x
  void eval(double x, double* f0, double* f1, double* f2) const {
    const int nh = n / 2;
    const double c1 = std::cos(x), s1 = std::sin(x);
    double ck = c1, sk = s1;
    double v0 = cosc[0], v1 = 0.0, v2 = 0.0;
    for (int k = 1; k <= nh; ++k) {
      const double a = cosc[k], b = sinc[k];
      v0 += a * ck + b * sk;
      v1 += double(k) * (b * ck - a * sk);
      v2 -= double(k) * double(k) * (a * ck + b * sk);
      const double cn = ck * c1 - sk * s1;
      sk = sk * c1 + ck * s1;
      ck = cn;
    }
    if (f0) *f0 = v0;
    if (f1) *f1 = v1;
    if (f2) *f2 = v2;
  }

  double value(double x) const {
    double v;
    eval(x, &v, nullptr, nullptr);
    return v;
  }

  // antiderivative with F(0) = 0, including the secular mean term
  double antiderivative(double x) const {
    const int nh = n / 2;
    const double c1 = std::cos(x), s1 = std::sin(x);
    double ck = c1, sk = s1;
    double acc = cosc[0] * x;
    for (int k = 1; k <= nh; ++k) {
      acc += (cosc[k] * sk + sinc[k] * (1.0 - ck)) / k;
      const double cn = ck * c1 - sk * s1;
      sk = sk * c1 + ck * s1;
      ck = cn;
    }
    return acc;
  }
};

// solve 2 pi R(y) = target for y in [0, 2pi], R the cumulative mass of rho
double invert_transport(const TrigSeries& rho, double target) {
  double lo = 0.0, hi = 2.0 * kPi;
  double y = target;  // uniform-density guess
  for (int it = 0; it < 80; ++it) {
    const double val = 2.0 * kPi * rho.antiderivative(y) - target;
    if (val > 0.0)
      hi = y;
    else
      lo = y;
    double density;
    rho.eval(y, &density, nullptr, nullptr);
    double next = y;
    if (density > 0.0) next = y - val / (2.0 * kPi * density);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - y) < 1e-15 * (1.0 + std::abs(y))) return next;
    y = next;
  }
  return y;
}

void check_same_grid(int a, int b) {
  if (a != b) throw shape_error("circle data uses mismatched grids");
}

}  // namespace

DensityOnCircle DensityOnCircle::uniform(int n) {
  if (n < 8) throw domain_error("circle grid needs at least 8 nodes");
  DensityOnCircle d;
  d.rho = RealVector::Constant(n, 1.0 / (2.0 * kPi));
  return d;
}

DensityOnCircle DensityOnCircle::from_values(RealVector values) {
  DensityOnCircle d;
  d.rho = std::move(values);
  d.validate();
  return d;
}

DensityOnCircle DensityOnCircle::normalize(RealVector values) {
  const int n = static_cast<int>(values.size());
  if (n < 8) throw domain_error("circle grid needs at least 8 nodes");
  const double total = values.sum() * (2.0 * kPi / n);
  if (!(total > 0.0)) throw domain_error("density values must have positive mass");
  return from_values(values / total);
}

void DensityOnCircle::validate() const {
  const int n = size();
  if (n < 8) throw domain_error("circle grid needs at least 8 nodes");
  for (int j = 0; j < n; ++j)
    if (!(rho[j] > 0.0) || !std::isfinite(rho[j]))
      throw domain_error("density must be positive and finite at every node");
  if (std::abs(mass() - 1.0) > 1e-10)
    throw domain_error("density mass deviates from 1 beyond 1e-10");
}

PotentialFunction PotentialFunction::from_values(RealVector values) {
  PotentialFunction p;
  p.f = std::move(values);
  p.validate();
  return p;
}

PotentialFunction PotentialFunction::normalize(RealVector values) {
  const int n = static_cast<int>(values.size());
  if (n < 8) throw domain_error("circle grid needs at least 8 nodes");
  return from_values(RealVector(values.array() - values.mean()));
}

PotentialFunction PotentialFunction::zero(int n) {
  return from_values(RealVector::Zero(n));
}

void PotentialFunction::validate() const {
  const int n = size();
  if (n < 8) throw domain_error("circle grid needs at least 8 nodes");
  for (int j = 0; j < n; ++j)
    if (!std::isfinite(f[j]))
      throw domain_error("potential must be finite at every node");
  if (std::abs(f.mean() * 2.0 * kPi) > 1e-12)
    throw domain_error("potential mean deviates from 0 beyond 1e-12");
}

HelmholtzParts helmholtz_1d(const RealVector& field,
                            const DensityOnCircle& rho) {
  rho.validate();
  const int n = rho.size();
  check_same_grid(static_cast<int>(field.size()), n);
  for (int j = 0; j < n; ++j)
    if (!std::isfinite(field[j]))
      throw domain_error("field must be finite at every node");

  const TrigSeries rho_s = TrigSeries::fit(rho.rho);
  const TrigSeries field_s = TrigSeries::fit(field);
  const double step = 2.0 * kPi / n;

  // pull the field back through the transport map, then split off the
  // constant fixed by periodicity of the potential
  RealVector pulled(n), weight(n);
  for (int j = 0; j < n; ++j) {
    const double y = j * step;
    pulled[j] = field_s.value(2.0 * kPi * rho_s.antiderivative(y));
    weight[j] = 1.0 / rho.rho[j];
  }
  const double constant =
      (pulled.array() * weight.array()).sum() / weight.sum();

  RealVector slope(n);
  for (int j = 0; j < n; ++j)
    slope[j] = (pulled[j] - constant) / (2.0 * kPi * rho.rho[j]);

  TrigSeries slope_s = TrigSeries::fit(slope);
  slope_s.cosc[0] = 0.0;  // exact zero mean by the choice of constant
  RealVector f(n);
  for (int j = 0; j < n; ++j) f[j] = slope_s.antiderivative(j * step);

  HelmholtzParts parts;
  parts.constant = constant;
  parts.potential = PotentialFunction::normalize(std::move(f));
  return parts;
}

double helmholtz_reconstruction_residual(const RealVector& field,
                                         const DensityOnCircle& rho,
                                         const HelmholtzParts& parts) {
  rho.validate();
  parts.potential.validate();
  const int n = rho.size();
  check_same_grid(static_cast<int>(field.size()), n);
  check_same_grid(parts.potential.size(), n);

  const TrigSeries rho_s = TrigSeries::fit(rho.rho);
  const TrigSeries f_s = TrigSeries::fit(parts.potential.f);
  const double step = 2.0 * kPi / n;

  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const double y = invert_transport(rho_s, j * step);
    double density, slope;
    rho_s.eval(y, &density, nullptr, nullptr);
    f_s.eval(y, nullptr, &slope, nullptr);
    const double rebuilt = parts.constant + 2.0 * kPi * density * slope;
    worst = std::max(worst, std::abs(field[j] - rebuilt));
  }
  return worst;
}

namespace {

// one classical fourth-order step of the joint system
// x' = -f'(x), J' = -f''(x) J
void flow_step(const TrigSeries& f, double h, double& x, double& jac) {
  const auto rhs = [&](double xx, double jj, double* dx, double* dj) {
    double d1, d2;
    f.eval(xx, nullptr, &d1, &d2);
    *dx = -d1;
    *dj = -d2 * jj;
  };
  double k1x, k1j, k2x, k2j, k3x, k3j, k4x, k4j;
  rhs(x, jac, &k1x, &k1j);
  rhs(x + 0.5 * h * k1x, jac + 0.5 * h * k1j, &k2x, &k2j);
  rhs(x + 0.5 * h * k2x, jac + 0.5 * h * k2j, &k3x, &k3j);
  rhs(x + h * k3x, jac + h * k3j, &k4x, &k4j);
  x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
  jac += h / 6.0 * (k1j + 2.0 * k2j + 2.0 * k3j + k4j);
}

DensityOnCircle assemble_density(const DensityOnCircle& rho0,
                                 const TrigSeries& rho0_s,
                                 const RealVector& x, const RealVector& jac) {
  RealVector out(rho0.size());
  for (int j = 0; j < rho0.size(); ++j)
    out[j] = rho0_s.value(x[j]) * jac[j];
  return DensityOnCircle::from_values(std::move(out));
}

}  // namespace

DensityOnCircle cartan_geodesic_density(const DensityOnCircle& rho0,
                                        const PotentialFunction& f, double t,
                                        double step) {
  auto traj = geodesic_trajectory(rho0, f, t, 1, step);
  return std::move(traj.back());
}

std::vector<DensityOnCircle> geodesic_trajectory(const DensityOnCircle& rho0,
                                                 const PotentialFunction& f,
                                                 double dt, int steps,
                                                 double step) {
  rho0.validate();
  f.validate();
  check_same_grid(f.size(), rho0.size());
  if (!(step > 0.0) || step > 1e-3 + 1e-15)
    throw precondition_error("integrator step must lie in (0, 1e-3]");
  if (steps < 1) throw domain_error("trajectory needs at least one step");
  if (!std::isfinite(dt)) throw domain_error("time increment must be finite");

  const int n = rho0.size();
  const TrigSeries f_s = TrigSeries::fit(f.f);
  const TrigSeries rho0_s = TrigSeries::fit(rho0.rho);

  RealVector x(n), jac(n);
  for (int j = 0; j < n; ++j) {
    x[j] = rho0.node(j);
    jac[j] = 1.0;
  }

  std::vector<DensityOnCircle> out;
  out.reserve(steps + 1);
  out.push_back(rho0);
  const int sub = std::max(1, static_cast<int>(std::ceil(std::abs(dt) / step)));
  const double h = dt / sub;
  for (int k = 0; k < steps; ++k) {
    for (int m = 0; m < sub; ++m)
      for (int j = 0; j < n; ++j) flow_step(f_s, h, x[j], jac[j]);
    out.push_back(assemble_density(rho0, rho0_s, x, jac));
  }
  return out;
}

double continuity_residual(const std::vector<DensityOnCircle>& trajectory,
                           const PotentialFunction& f, double dt) {
  if (trajectory.size() < 3)
    throw domain_error("continuity check needs at least three time samples");
  if (!(dt > 0.0)) throw domain_error("time increment must be positive");
  f.validate();
  const int n = trajectory.front().size();
  check_same_grid(f.size(), n);
  for (const auto& d : trajectory) check_same_grid(d.size(), n);

  const double dx = 2.0 * kPi / n;
  const TrigSeries f_s = TrigSeries::fit(f.f);
  RealVector slope(n);
  for (int j = 0; j < n; ++j)
    f_s.eval(j * dx, nullptr, &slope[j], nullptr);

  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < trajectory.size(); ++k) {
    const RealVector& prev = trajectory[k - 1].rho;
    const RealVector& cur = trajectory[k].rho;
    const RealVector& next = trajectory[k + 1].rho;
    for (int j = 0; j < n; ++j) {
      const int jp = (j + 1) % n;
      const int jm = (j + n - 1) % n;
      const double ddt = (next[j] - prev[j]) / (2.0 * dt);
      const double flux =
          (cur[jp] * slope[jp] - cur[jm] * slope[jm]) / (2.0 * dx);
      worst = std::max(worst, std::abs(ddt + flux));
    }
  }
  return worst;
}

void write_trajectory_csv(std::ostream& out,
                          const std::vector<DensityOnCircle>& trajectory,
                          double dt) {
  out << "t,node,rho\n";
  char line[96];
  for (std::size_t k = 0; k < trajectory.size(); ++k)
    for (int j = 0; j < trajectory[k].size(); ++j) {
      std::snprintf(line, sizeof line, "%.12g,%d,%.17g\n", k * dt, j,
                    trajectory[k].rho[j]);
      out << line;
    }
}

}  // namespace cartanlab
