#include "cartanlab/hm_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cartanlab/errors.hpp"

namespace cartanlab {

namespace {

// All exact arithmetic runs over 128-bit integers; inputs are bounded so the
// Hadamard estimates for every determinant stay far below the 128-bit range.
using Wide = __int128;
using WideMat = std::vector<std::vector<Wide>>;
using WideVec = std::vector<Wide>;

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(Wide x) {
  if (x > Wide(std::numeric_limits<std::int64_t>::max()) ||
      x < Wide(std::numeric_limits<std::int64_t>::min())) {
    throw domain_error("exact integer result exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(x);
}

double to_double(Wide x) {
  return static_cast<double>(static_cast<long double>(x));
}

void reduce_by_gcd(WideVec& v) {
  Wide g = 0;
  for (Wide x : v) g = wide_gcd(g, x);
  if (g > 1) {
    for (Wide& x : v) x /= g;
  }
}

// Fraction-free determinant (Bareiss elimination).
Wide det_wide(WideMat m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  Wide sign = 1;
  Wide prev = 1;
  for (int p = 0; p + 1 < n; ++p) {
    if (m[p][p] == 0) {
      int r = p + 1;
      while (r < n && m[r][p] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[p], m[r]);
      sign = -sign;
    }
    for (int i = p + 1; i < n; ++i) {
      for (int j = p + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
      }
      m[i][p] = 0;
    }
    prev = m[p][p];
  }
  return sign * m[n - 1][n - 1];
}

// Cramer solve of the square system a x = b.  Returns false when det(a) == 0;
// otherwise num/den is the exact solution with den = det(a).
bool cramer_wide(const WideMat& a, const WideVec& b, WideVec& num, Wide& den) {
  const int n = static_cast<int>(a.size());
  den = det_wide(a);
  if (den == 0) return false;
  num.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    WideMat ai = a;
    for (int r = 0; r < n; ++r) ai[r][i] = b[r];
    num[i] = det_wide(ai);
  }
  return true;
}

// Exact row echelon by multiply-subtract with per-row gcd reduction.
// Returns the pivot columns; m is reduced in place.
std::vector<int> echelon_wide(WideMat& m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  std::vector<int> pivot_cols;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int r = row;
    while (r < rows && m[r][col] == 0) ++r;
    if (r == rows) continue;
    std::swap(m[row], m[r]);
    for (int i = row + 1; i < rows; ++i) {
      if (m[i][col] == 0) continue;
      const Wide p = m[row][col];
      const Wide q = m[i][col];
      for (int j = 0; j < cols; ++j) m[i][j] = m[i][j] * p - q * m[row][j];
      reduce_by_gcd(m[i]);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  return pivot_cols;
}

// Integer basis of the nullspace of m (one vector per free column).
std::vector<WideVec> nullspace_wide(WideMat m) {
  const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  const std::vector<int> pivot_cols = echelon_wide(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_cols) is_pivot[c] = true;
  std::vector<WideVec> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    WideVec x(cols, 0);
    x[f] = 1;
    for (int i = static_cast<int>(pivot_cols.size()) - 1; i >= 0; --i) {
      const int pc = pivot_cols[i];
      Wide s = 0;
      for (int j = pc + 1; j < cols; ++j) s += m[i][j] * x[j];
      const Wide p = m[i][pc];
      for (int j = 0; j < cols; ++j) {
        if (j != pc) x[j] *= p;
      }
      x[pc] = -s;
      reduce_by_gcd(x);
    }
    if (x[f] < 0) {
      for (Wide& e : x) e = -e;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

Wide max_pairing(const std::vector<WideVec>& rows, const WideVec& s) {
  Wide best = 0;
  bool first = true;
  for (const auto& w : rows) {
    Wide dot = 0;
    for (std::size_t l = 0; l < s.size(); ++l) dot += w[l] * s[l];
    if (first || dot > best) {
      best = dot;
      first = false;
    }
  }
  return best;
}

}  // namespace

std::string to_string(StabilityLabel label) {
  switch (label) {
    case StabilityLabel::stable:
      return "stable";
    case StabilityLabel::semistable:
      return "semistable";
    case StabilityLabel::unstable:
      return "unstable";
  }
  return "unknown";
}

std::int64_t int_determinant(
    const Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>& m) {
  if (m.rows() != m.cols()) throw shape_error("determinant needs a square matrix");
  WideMat w(m.rows(), WideVec(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) w[i][j] = m(i, j);
  return narrow(det_wide(std::move(w)));
}

Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> int_nullspace(
    const Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>& m) {
  WideMat w(m.rows(), WideVec(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) w[i][j] = m(i, j);
  const std::vector<WideVec> basis = nullspace_wide(std::move(w));
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> out(
      m.cols(), static_cast<int>(basis.size()));
  for (int c = 0; c < out.cols(); ++c)
    for (int r = 0; r < out.rows(); ++r) out(r, c) = narrow(basis[c][r]);
  return out;
}

TorusStabilityCertificate classify_torus_weights(
    const Eigen::MatrixXi& weights, const std::vector<bool>& support) {
  const int n = static_cast<int>(weights.rows());
  const int k = static_cast<int>(weights.cols());
  if (static_cast<int>(support.size()) != n) {
    throw shape_error("support mask size does not match weight rows");
  }
  if (k < 1 || k > 5) {
    throw config_error("exact classification supports lattice rank 1..5");
  }
  if (n > 0 && weights.cwiseAbs().maxCoeff() > 100) {
    throw config_error("exact classification supports |weight| <= 100");
  }

  std::vector<int> active;
  for (int j = 0; j < n; ++j) {
    if (support[j]) active.push_back(j);
  }
  if (active.empty()) throw precondition_error("no active weight rows");
  const int ns = static_cast<int>(active.size());
  if (ns > 20) throw config_error("too many active rows for subset enumeration");

  std::vector<WideVec> rows;
  rows.reserve(ns);
  for (int j : active) {
    WideVec w(k);
    for (int l = 0; l < k; ++l) w[l] = weights(j, l);
    rows.push_back(std::move(w));
  }

  // Hull membership of the origin: some subset of at most k+1 active rows
  // carries nonnegative barycentric coordinates summing to one.
  bool in_hull = false;
  for (int mask = 1; mask < (1 << ns) && !in_hull; ++mask) {
    std::vector<int> sel;
    for (int i = 0; i < ns; ++i) {
      if (mask & (1 << i)) sel.push_back(i);
    }
    const int t = static_cast<int>(sel.size());
    if (t > k + 1) continue;
    // Columns [w_i; 1], right-hand side [0; 1]; solve the normal equations
    // exactly and verify the solution against the original system so rank
    // deficiencies cannot sneak through.
    WideMat gram(t, WideVec(t, 0));
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < t; ++j) {
        Wide dot = 1;  // the affine row contributes 1*1
        for (int l = 0; l < k; ++l) dot += rows[sel[i]][l] * rows[sel[j]][l];
        gram[i][j] = dot;
      }
    }
    WideVec rhs(t, 1);
    WideVec num;
    Wide den = 0;
    if (!cramer_wide(gram, rhs, num, den)) continue;
    bool feasible = den > 0;
    for (int i = 0; i < t && feasible; ++i) feasible = num[i] >= 0;
    for (int l = 0; l < k && feasible; ++l) {
      Wide s = 0;
      for (int i = 0; i < t; ++i) s += rows[sel[i]][l] * num[i];
      feasible = (s == 0);
    }
    if (feasible) {
      Wide s = 0;
      for (int i = 0; i < t; ++i) s += num[i];
      feasible = (s == den);
    }
    if (feasible) in_hull = true;
  }

  // Candidate rays: negated exact projections of the origin onto affine
  // spans of small subsets (they certify instability when the origin lies
  // outside the hull), plus supporting normals through the origin (exact
  // nullspace vectors of row stacks, both signs; they certify that the
  // origin sits on the hull boundary).
  std::set<std::vector<std::int64_t>> seen;
  std::vector<WideVec> candidates;
  auto add_candidate = [&](WideVec s) {
    bool nonzero = false;
    for (Wide e : s) {
      if (e != 0) nonzero = true;
    }
    if (!nonzero) return;
    reduce_by_gcd(s);
    std::vector<std::int64_t> key(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) key[i] = narrow(s[i]);
    if (seen.insert(key).second) candidates.push_back(std::move(s));
  };

  for (int mask = 1; mask < (1 << ns); ++mask) {
    std::vector<int> sel;
    for (int i = 0; i < ns; ++i) {
      if (mask & (1 << i)) sel.push_back(i);
    }
    const int t = static_cast<int>(sel.size());
    if (t > k + 1) continue;
    const WideVec& w0 = rows[sel[0]];
    if (t == 1) {
      WideVec s(k);
      for (int l = 0; l < k; ++l) s[l] = -w0[l];
      add_candidate(std::move(s));
    } else {
      WideMat diff(k, WideVec(t - 1));
      for (int i = 1; i < t; ++i) {
        for (int l = 0; l < k; ++l) diff[l][i - 1] = rows[sel[i]][l] - w0[l];
      }
      WideMat gram(t - 1, WideVec(t - 1, 0));
      WideVec rhs(t - 1, 0);
      for (int i = 0; i + 1 < t; ++i) {
        for (int j = 0; j + 1 < t; ++j) {
          Wide dot = 0;
          for (int l = 0; l < k; ++l) dot += diff[l][i] * diff[l][j];
          gram[i][j] = dot;
        }
        Wide dot = 0;
        for (int l = 0; l < k; ++l) dot += diff[l][i] * w0[l];
        rhs[i] = -dot;
      }
      WideVec num;
      Wide den = 0;
      if (cramer_wide(gram, rhs, num, den)) {
        WideVec s(k);
        for (int l = 0; l < k; ++l) {
          Wide q = w0[l] * den;
          for (int i = 0; i + 1 < t; ++i) q += diff[l][i] * num[i];
          s[l] = -q;
        }
        if (den < 0) {
          for (Wide& e : s) e = -e;
        }
        add_candidate(std::move(s));
      }
    }
    if (t <= k) {
      WideMat stack(t, WideVec(k));
      for (int i = 0; i < t; ++i) stack[i] = rows[sel[i]];
      for (WideVec& nb : nullspace_wide(std::move(stack))) {
        WideVec neg(nb.size());
        for (std::size_t l = 0; l < nb.size(); ++l) neg[l] = -nb[l];
        add_candidate(std::move(nb));
        add_candidate(std::move(neg));
      }
    }
  }

  TorusStabilityCertificate cert;
  double min_slope = std::numeric_limits<double>::infinity();
  bool have_negative = false;
  bool have_zero = false;
  WideVec negative_witness;
  WideVec zero_witness;
  double most_negative = 0.0;
  for (const WideVec& s : candidates) {
    const Wide mu = max_pairing(rows, s);
    double norm2 = 0.0;
    for (Wide e : s) norm2 += to_double(e) * to_double(e);
    const double slope = to_double(mu) / std::sqrt(norm2);
    min_slope = std::min(min_slope, slope);
    if (mu < 0 && (!have_negative || slope < most_negative)) {
      have_negative = true;
      most_negative = slope;
      negative_witness = s;
    }
    if (mu == 0 && !have_zero) {
      have_zero = true;
      zero_witness = s;
    }
  }

  if (in_hull && have_negative) {
    throw degeneracy_error("exact stability certificate is inconsistent");
  }
  if (!in_hull && !have_negative) {
    throw degeneracy_error("origin outside hull but no destabilizing ray found");
  }

  auto to_eigen = [](const WideVec& s) {
    Eigen::VectorXi v(static_cast<int>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
      v[static_cast<int>(i)] = static_cast<int>(narrow(s[i]));
    }
    return v;
  };

  if (!in_hull) {
    cert.label = StabilityLabel::unstable;
    cert.witness = to_eigen(negative_witness);
  } else if (have_zero) {
    cert.label = StabilityLabel::semistable;
    cert.witness = to_eigen(zero_witness);
  } else {
    cert.label = StabilityLabel::stable;
  }
  cert.min_slope = min_slope;
  cert.candidates.reserve(candidates.size());
  for (const WideVec& s : candidates) cert.candidates.push_back(to_eigen(s));
  return cert;
}

double weight_slope(const Eigen::MatrixXi& weights,
                    const std::vector<bool>& support, const RealVector& s) {
  if (static_cast<int>(support.size()) != weights.rows()) {
    throw shape_error("support mask size does not match weight rows");
  }
  if (s.size() != weights.cols()) {
    throw shape_error("direction size does not match weight columns");
  }
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (int j = 0; j < weights.rows(); ++j) {
    if (!support[j]) continue;
    any = true;
    double dot = 0.0;
    for (int l = 0; l < weights.cols(); ++l) dot += weights(j, l) * s[l];
    best = std::max(best, dot);
  }
  if (!any) throw precondition_error("no active weight rows");
  return best;
}

std::vector<bool> support_mask(const Vector& v, double threshold) {
  std::vector<bool> mask(v.size());
  for (int j = 0; j < v.size(); ++j) mask[j] = std::abs(v[j]) > threshold;
  return mask;
}

}  // namespace cartanlab
