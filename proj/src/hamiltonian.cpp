#include "cartanlab/hamiltonian.hpp"

#include <cmath>
#include <complex>

#include "cartanlab/errors.hpp"
#include "cartanlab/tolerances.hpp"

namespace cartanlab {

ProjectivePoint ProjectivePoint::from(Vector raw) {
  const double n = raw.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw domain_error("projective point needs a nonzero finite vector");
  }
  raw /= n;
  // Rotate the phase so the first entry of nontrivial modulus is positive
  // real; ties in representatives then vanish.
  for (int j = 0; j < raw.size(); ++j) {
    const double a = std::abs(raw[j]);
    if (a > 1e-14) {
      raw *= std::conj(raw[j]) / a;
      break;
    }
  }
  return ProjectivePoint{std::move(raw)};
}

double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (a.dim() != b.dim()) throw shape_error("projective points of unequal size");
  const double c = std::min(1.0, std::abs(a.v.dot(b.v)));
  return std::acos(c);
}

TangentVector TangentVector::at(ProjectivePoint base, Vector w) {
  if (w.size() != base.v.size()) throw shape_error("tangent size mismatch");
  w -= base.v.dot(w) * base.v;  // chart: orthogonal complement of the line
  return TangentVector{std::move(base), std::move(w)};
}

LinearAction LinearAction::identity_on(KleinPair pair) {
  LinearAction act;
  act.dim_v = pair.matrix_size();
  act.klein = std::move(pair);
  act.alg = [](const Matrix& xi) { return xi; };
  act.grp = [](const Matrix& a) { return a; };
  return act;
}

LinearAction LinearAction::torus_weights(const Eigen::MatrixXi& W) {
  const int n = static_cast<int>(W.rows());
  const int k = static_cast<int>(W.cols());
  if (n == 0 || k == 0) throw shape_error("empty weight matrix");
  LinearAction act;
  act.klein = KleinPair::complexified_torus(k);
  act.dim_v = n;
  act.weights = W;
  const Eigen::MatrixXi Wc = W;
  act.alg = [n, k, Wc](const Matrix& xi) {
    if (xi.rows() != k || xi.cols() != k) throw shape_error("torus algebra size");
    Matrix out = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      Complex z = 0.0;
      for (int l = 0; l < k; ++l) z += static_cast<double>(Wc(j, l)) * xi(l, l);
      out(j, j) = z;
    }
    return out;
  };
  act.grp = [n, k, Wc](const Matrix& a) {
    if (a.rows() != k || a.cols() != k) throw shape_error("torus group size");
    Matrix out = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      Complex z = 1.0;
      for (int l = 0; l < k; ++l) {
        const int w = Wc(j, l);
        const Complex base = a(l, l);
        if (w >= 0) {
          for (int r = 0; r < w; ++r) z *= base;
        } else {
          for (int r = 0; r < -w; ++r) z /= base;
        }
      }
      out(j, j) = z;
    }
    return out;
  };
  return act;
}

void validate(const LinearAction& act) {
  if (!act.alg || !act.grp) throw config_error("action maps not set");
  if (act.dim_v <= 0) throw config_error("action dimension not set");
  const auto& basis = act.klein.basis_g;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Matrix ri = act.alg(basis[i]);
    if (ri.rows() != act.dim_v || ri.cols() != act.dim_v) {
      throw config_error("algebra map image has wrong size");
    }
    if ((ri + ri.adjoint()).norm() > tols::structure_identity * (1.0 + ri.norm())) {
      throw config_error("compact algebra does not act anti-Hermitianly");
    }
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const Matrix lhs = act.alg(bracket(basis[i], basis[j]));
      const Matrix rhs = bracket(ri, act.alg(basis[j]));
      if ((lhs - rhs).norm() > tols::structure_identity * (1.0 + rhs.norm())) {
        throw config_error("algebra map is not a homomorphism");
      }
    }
  }
}

TangentVector inf_action(const LinearAction& act, const Matrix& xi,
                         const ProjectivePoint& m) {
  return TangentVector::at(m, act.alg(xi) * m.v);
}

double symplectic_form(const TangentVector& x, const TangentVector& y) {
  if (x.base.v.size() != y.base.v.size()) throw shape_error("tangent base mismatch");
  return 2.0 * (x.w.dot(y.w)).imag();
}

TangentVector complex_structure(const TangentVector& x) {
  return TangentVector{x.base, Complex(0.0, 1.0) * x.w};
}

double metric_norm2(const TangentVector& x) {
  return 2.0 * x.w.squaredNorm();
}

MomentumCovector momentum(const LinearAction& act, const ProjectivePoint& m) {
  const auto& basis = act.klein.basis_g;
  RealVector rhs(basis.size());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    rhs[static_cast<int>(b)] = (m.v.dot(act.alg(basis[b]) * m.v)).imag();
  }
  const RealVector coords = act.klein.solve_gram_g(rhs);
  return MomentumCovector{act.klein.from_g_coordinates(coords)};
}

double momentum_pairing(const LinearAction& act, const ProjectivePoint& m,
                        const Matrix& xi) {
  return kappa(momentum(act, m).value, xi);
}

Matrix momentum_derivative(const LinearAction& act, const ProjectivePoint& m,
                           const Vector& w, double h) {
  const ProjectivePoint plus = ProjectivePoint::from(m.v + h * w);
  const ProjectivePoint minus = ProjectivePoint::from(m.v - h * w);
  return (momentum(act, plus).value - momentum(act, minus).value) / (2.0 * h);
}

double momentum_defect(const LinearAction& act, const ProjectivePoint& m,
                       const Matrix& xi, const TangentVector& X, double h) {
  const TangentVector xi_m = inf_action(act, xi, m);
  const Matrix dJ = momentum_derivative(act, m, X.w, h);
  return std::abs(symplectic_form(xi_m, X) + kappa(dJ, xi));
}

Matrix cocycle_sigma(const LinearAction& act, const GroupElement& g,
                     const ProjectivePoint& m) {
  const Matrix rep = act.grp(g.a);
  const ProjectivePoint gm = ProjectivePoint::from(rep * m.v);
  const Matrix lhs = momentum(act, gm).value;
  const Matrix rhs = adjoint(g.a, momentum(act, m).value);
  return lhs - rhs;
}

ProjectivePoint act_point(const LinearAction& act, const Matrix& a,
                          const ProjectivePoint& m) {
  return ProjectivePoint::from(act.grp(a) * m.v);
}

TangentVector projective_velocity(const Vector& u, const Vector& udot) {
  if (u.size() != udot.size()) throw shape_error("velocity size mismatch");
  ProjectivePoint m = ProjectivePoint::from(u);
  // m.v = e^{i alpha} u / |u|; the chart at m.v sees tangents rotated by the
  // same phase relative to the chart at u / |u|.
  const Complex s = m.v.dot(u);  // = e^{-i alpha} |u|
  const Complex phase = std::conj(s) / std::abs(s);
  Vector w = udot - m.v.dot(udot) * m.v;
  w *= phase / u.norm();
  return TangentVector{std::move(m), std::move(w)};
}

}  // namespace cartanlab
