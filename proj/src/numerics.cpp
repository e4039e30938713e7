#include "cartanlab/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "cartanlab/errors.hpp"

namespace cartanlab {

RealMatrix fd_weights(double z, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  if (n < m) throw shape_error("fd_weights: need at least m+1 nodes");
  RealMatrix c = RealMatrix::Zero(m + 1, n + 1);
  double c1 = 1.0;
  double c4 = x[0] - z;
  c(0, 0) = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c(k, i) = c1 * (k * c(k - 1, i - 1) - c5 * c(k, i - 1)) / c2;
        c(0, i) = -c1 * c5 * c(0, i - 1) / c2;
      }
      for (int k = mn; k >= 1; --k)
        c(k, j) = (c4 * c(k, j) - k * c(k - 1, j)) / c3;
      c(0, j) = c4 * c(0, j) / c3;
    }
    c1 = c2;
  }
  return c;
}

RealVector fd_derivative(const RealVector& f, double h, int deriv, int order) {
  const int n = static_cast<int>(f.size());
  // Stencil width giving the requested order for both centered and one-sided
  // use; centered stencils gain one order of symmetry so this is generous.
  const int width = deriv + order;
  const int pts = width + 1;
  if (n < pts) throw shape_error("fd_derivative: grid too short for stencil");
  RealVector out(n);
  std::vector<double> nodes(pts);
  for (int i = 0; i < n; ++i) {
    int lo = i - pts / 2;
    lo = std::max(0, std::min(lo, n - pts));
    for (int k = 0; k < pts; ++k) nodes[k] = (lo + k - i) * h;
    const RealMatrix w = fd_weights(0.0, nodes, deriv);
    double acc = 0.0;
    for (int k = 0; k < pts; ++k) acc += w(deriv, k) * f[lo + k];
    out[i] = acc;
  }
  return out;
}

double simpson_uniform(const RealVector& f, double h) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 2 || n % 2 != 0)
    throw shape_error("simpson_uniform: need an even interval count");
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; i += 2) odd += f[i];
  for (int i = 2; i < n; i += 2) even += f[i];
  return h / 3.0 * (f[0] + f[n] + 4.0 * odd + 2.0 * even);
}

double trapezoid_uniform(const RealVector& f, double h) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 1) throw shape_error("trapezoid_uniform: need at least 2 samples");
  double acc = 0.5 * (f[0] + f[n]);
  for (int i = 1; i < n; ++i) acc += f[i];
  return acc * h;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double interp_cubic(const RealVector& f, double x0, double h, double x) {
  const int n = static_cast<int>(f.size());
  if (n < 4) throw shape_error("interp_cubic: need at least 4 samples");
  const double s = (x - x0) / h;
  int i = static_cast<int>(std::floor(s));
  i = std::max(1, std::min(i, n - 3));
  const double t = s - i;
  const double fm1 = f[i - 1], f0 = f[i], f1 = f[i + 1], f2 = f[i + 2];
  // Lagrange basis on offsets {-1, 0, 1, 2}.
  const double lm1 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double l0 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double l1 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double l2 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return lm1 * fm1 + l0 * f0 + l1 * f1 + l2 * f2;
}

}  // namespace cartanlab
