// Batch scenario runner: every subcommand drives one library pipeline,
// checks its gates, and writes a JSON report (plus CSV curves) that is
// byte-identical for identical (scenario, seed).

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cartanlab/cartan.hpp"
#include "cartanlab/density_circle.hpp"
#include "cartanlab/errors.hpp"
#include "cartanlab/futaki.hpp"
#include "cartanlab/hamiltonian.hpp"
#include "cartanlab/hm_oracle.hpp"
#include "cartanlab/kahler_cp1.hpp"
#include "cartanlab/kempf_ness.hpp"
#include "cartanlab/lie_core.hpp"
#include "cartanlab/rng.hpp"
#include "cartanlab/tolerances.hpp"

using namespace cartanlab;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// report plumbing

struct Common {
  std::string out = "reports";
  std::uint64_t seed = 1;
  double tol = -1.0;  // headline-gate override; <= 0 keeps the shared gate

  double gate(double fallback) const { return tol > 0.0 ? tol : fallback; }
};

struct CheckRow {
  std::string name;
  std::string anchor;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct RunOutcome {
  std::string scenario;
  ojson params = ojson::object();
  std::vector<CheckRow> checks;
  std::vector<std::string> artifacts;
  std::vector<std::string> notes;  // extra stdout lines (label readouts etc.)

  void below(const std::string& name, const std::string& anchor, double value,
             double tol) {
    checks.push_back({name, anchor, value, tol, value <= tol});
  }
  void above(const std::string& name, const std::string& anchor, double value,
             double floor) {
    checks.push_back({name, anchor, value, floor, value >= floor});
  }
  bool all_pass() const {
    for (const CheckRow& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

ojson to_json(const RunOutcome& r) {
  ojson j;
  j["scenario"] = r.scenario;
  j["params"] = r.params;
  ojson rows = ojson::array();
  for (const CheckRow& c : r.checks) {
    ojson row;
    row["name"] = c.name;
    row["paper_anchor"] = c.anchor;
    row["value"] = c.value;
    row["tolerance"] = c.tolerance;
    row["pass"] = c.pass;
    rows.push_back(std::move(row));
  }
  j["checks"] = std::move(rows);
  j["artifacts"] = r.artifacts;
  return j;
}

void save_artifact(RunOutcome& r, const Common& c, const std::string& name,
                   const std::string& content) {
  fs::create_directories(c.out);
  std::ofstream out(fs::path(c.out) / name, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write artifact " + name);
  r.artifacts.push_back(name);
}

void csv_row(std::string& csv, const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  csv += buf;
  csv += '\n';
}

// Writes the report file and appends the human-readable summary to `text`.
bool finish(const RunOutcome& r, const Common& c, std::string& text) {
  fs::create_directories(c.out);
  const fs::path path = fs::path(c.out) / (r.scenario + ".json");
  {
    std::ofstream out(path, std::ios::binary);
    out << to_json(r).dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write " + path.string());
  }
  text += "scenario: " + r.scenario + "\n";
  for (const std::string& note : r.notes) text += "  " + note + "\n";
  for (const CheckRow& k : r.checks) {
    char line[256];
    std::snprintf(line, sizeof line, "  [%s] %-34s value=%-14.6g tol=%g\n",
                  k.pass ? "PASS" : "FAIL", k.name.c_str(), k.value,
                  k.tolerance);
    text += line;
  }
  for (const std::string& a : r.artifacts) text += "  artifact: " + a + "\n";
  text += std::string("  report: ") + path.string() + "\n";
  return r.all_pass();
}

// ---------------------------------------------------------------------------
// shared model builders

const Complex kI(0.0, 1.0);

Vector cvec(std::initializer_list<Complex> entries) {
  Vector v(static_cast<int>(entries.size()));
  int i = 0;
  for (const Complex& z : entries) v[i++] = z;
  return v;
}

Matrix mat_h() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Matrix mat_e() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

RealVector parse_reals(const std::string& spec) {
  std::vector<double> vals;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw config_error("cannot parse '" + item + "' as a number");
    }
    while (used < item.size() && std::isspace(item[used] != 0)) ++used;
    if (used != item.size())
      throw config_error("trailing characters in '" + item + "'");
    vals.push_back(x);
  }
  if (vals.empty()) throw config_error("empty number list '" + spec + "'");
  RealVector v(static_cast<int>(vals.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = vals[i];
  return v;
}

// "--weights 1,-1" is one circle factor with coordinate weights (1, -1);
// semicolons separate factors, so "1,0,-1;0,1,-1" is a 2-torus on C^3.
Eigen::MatrixXi parse_weights(const std::string& spec) {
  std::vector<std::vector<int>> factors;
  std::stringstream ss(spec);
  std::string group;
  while (std::getline(ss, group, ';')) {
    const RealVector r = parse_reals(group);
    std::vector<int> ints;
    for (int i = 0; i < r.size(); ++i) {
      const double x = r[i];
      if (x != std::floor(x) || std::abs(x) > 1e6)
        throw config_error("weights must be small integers");
      ints.push_back(static_cast<int>(x));
    }
    if (!factors.empty() && ints.size() != factors.front().size())
      throw config_error("weight factors must have equal length");
    factors.push_back(std::move(ints));
  }
  if (factors.empty()) throw config_error("no weights given");
  Eigen::MatrixXi W(static_cast<int>(factors.front().size()),
                    static_cast<int>(factors.size()));
  for (int j = 0; j < W.rows(); ++j)
    for (int l = 0; l < W.cols(); ++l) W(j, l) = factors[l][j];
  return W;
}

Vector parse_vector(const std::string& spec) {
  const RealVector r = parse_reals(spec);
  Vector v(r.size());
  for (int i = 0; i < r.size(); ++i) v[i] = Complex(r[i], 0.0);
  return v;
}

CartanBundle sl2_bundle(Rng& rng, int certify_samples = 30) {
  const KleinPair pair = KleinPair::complexified_su(2);
  CartanBundle b = CartanBundle::orbit_model(
      LinearAction::identity_on(pair),
      ProjectivePoint::from(cvec({1.0, 0.0})));
  b.certify(rng, certify_samples);
  return b;
}

CartanBundle torus_bundle(const Eigen::MatrixXi& W, const Vector& base,
                          Rng& rng, int certify_samples = 30) {
  if (base.size() != W.rows())
    throw config_error("vector length must match the weight row count");
  CartanBundle b = CartanBundle::orbit_model(LinearAction::torus_weights(W),
                                             ProjectivePoint::from(base));
  b.certify(rng, certify_samples);
  return b;
}

GroupElement generic_point(const CartanBundle& b, Rng& rng, double radius) {
  const Matrix m = matrix_exp(b.klein.random_ambient(rng, radius)) *
                   matrix_exp(b.klein.random_ambient(rng, radius));
  return GroupElement{m, b.klein.ambient_group_tag};
}

SymplecticPotential1D sampled_correction(
    int n, const std::function<double(double)>& f) {
  RealVector s(n + 1);
  const double h = 2.0 / n;
  for (int i = 0; i <= n; ++i) s[i] = f(-1.0 + i * h);
  return SymplecticPotential1D::from_correction(std::move(s));
}

double smooth_bump(double x) {
  const double q = (1.0 - x * x);
  return q * q;
}

SymplecticPotential1D random_admissible(int n, Rng& rng, double scale) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double a = rng.uniform(-1.0, 1.0);
    const double bx = rng.uniform(-1.0, 1.0);
    const double cs = rng.uniform(-1.0, 1.0);
    try {
      return sampled_correction(n, [&](double x) {
        return scale * smooth_bump(x) * smooth_bump(x) *
               (a + bx * x + cs * std::sin(3.0 * x));
      });
    } catch (const domain_error&) {
    }
  }
  throw convergence_error("no admissible random correction found");
}

RealVector sampled_circle(int n, const std::function<double(double)>& f) {
  RealVector v(n);
  for (int j = 0; j < n; ++j) v[j] = f(2.0 * kPi * j / n);
  return v;
}

DensityOnCircle bumpy_density(int n, Rng& rng) {
  RealVector coef(6);
  for (int i = 0; i < coef.size(); ++i) coef[i] = rng.uniform(-1.0, 1.0);
  return DensityOnCircle::normalize(sampled_circle(n, [&](double x) {
    double v = 1.0;
    for (int m = 1; m <= 3; ++m)
      v += 0.3 / m *
           (coef[2 * m - 2] * std::cos(m * x) + coef[2 * m - 1] * std::sin(m * x));
    return v;
  }));
}

RealVector random_field(int n, Rng& rng, int modes = 6) {
  RealVector a(modes + 1), b2(modes + 1);
  for (int m = 0; m <= modes; ++m) {
    a[m] = rng.uniform(-1.0, 1.0) / (1.0 + m);
    b2[m] = rng.uniform(-1.0, 1.0) / (1.0 + m);
  }
  return sampled_circle(n, [&](double x) {
    double v = 0.0;
    for (int m = 0; m <= modes; ++m)
      v += a[m] * std::cos(m * x) + b2[m] * std::sin(m * x);
    return v;
  });
}

// ---------------------------------------------------------------------------
// scenarios

struct CertifyOpts {
  Common c;
  std::string group = "sl2";
  int samples = 30;
  double radius = 0.8;
};

RunOutcome run_certify(const CertifyOpts& o) {
  RunOutcome r;
  r.scenario = "certify";
  r.params["group"] = o.group;
  r.params["samples"] = o.samples;
  r.params["radius"] = o.radius;
  r.params["seed"] = o.c.seed;

  Rng rng(o.c.seed);
  CartanBundle b = o.group == "sl2"
                       ? sl2_bundle(rng, o.samples)
                       : torus_bundle(parse_weights("1,-1"),
                                      cvec({1.0, 1.0}), rng, o.samples);

  double worst_defect = 0.0;
  for (int k = 0; k < o.samples; ++k) {
    const GroupElement g = generic_point(b, rng, o.radius);
    const ProjectivePoint m = act_point(b.action, g.a, b.base);
    const Matrix xi = b.klein.random_g(rng, 1.0);
    const TangentVector X =
        inf_action(b.action, b.klein.random_ambient(rng, 1.0), m);
    worst_defect = std::max(worst_defect, momentum_defect(b.action, m, xi, X));
  }
  r.below("momentum_defining_relation", "momentum1", worst_defect,
          o.c.gate(tols::momentum_defect));
  r.below("momentum_equivariance", "nonequiv_first",
          b.certificate->max_cocycle, tols::cocycle);

  double worst_calabi = 0.0;
  const int calabi_samples = std::max(5, o.samples / 3);
  for (int k = 0; k < calabi_samples; ++k) {
    const GroupElement p = generic_point(b, rng, o.radius);
    const Matrix xi = b.klein.random_ambient(rng, 1.0);
    const Matrix eta = b.klein.random_ambient(rng, 1.0);
    worst_calabi =
        std::max(worst_calabi, a_equivariance_defect(b, p, xi, eta));
  }
  r.below("calabi_symmetry", "momentumMapNonEquivariance:calabi", worst_calabi,
          tols::a_equivariance);
  return r;
}

struct ConstancyOpts {
  Common c;
  std::string group = "sl2";
  int samples = 50;
  double radius = 0.8;
};

RunOutcome run_futaki_constancy(const ConstancyOpts& o) {
  RunOutcome r;
  r.scenario = "futaki-constancy";
  r.params["group"] = o.group;
  r.params["samples"] = o.samples;
  r.params["radius"] = o.radius;
  r.params["seed"] = o.c.seed;

  Rng rng(o.c.seed);
  const bool sl2 = o.group == "sl2";
  CartanBundle b =
      sl2 ? sl2_bundle(rng)
          : torus_bundle(parse_weights("1,-1"), cvec({1.0, 0.0}), rng);
  Matrix zeta;
  if (sl2) {
    zeta = mat_h();
  } else {
    zeta = Matrix::Zero(1, 1);
    zeta(0, 0) = 1.0;
  }

  const ConstancyReport rep =
      futaki_constancy(b, zeta, rng, o.samples, o.radius);
  {
    char note[128];
    std::snprintf(note, sizeof note,
                  "character along the diagonal direction: %.12g", rep.value);
    r.notes.push_back(note);
  }
  r.below("character_constancy_spread", "constFutaki", rep.rel_spread,
          o.c.gate(tols::futaki_spread_rel));
  if (o.group == "sl2") {
    const ConstancyReport rep_e =
        futaki_constancy(b, mat_e(), rng, o.samples, o.radius);
    r.below("nilpotent_character_vanishes", "futakiIsCharacter",
            std::abs(rep_e.value), tols::futaki_nilpotent);
  }
  return r;
}

struct CharacterOpts {
  Common c;
  double radius = 0.7;
};

RunOutcome run_futaki_character(const CharacterOpts& o) {
  RunOutcome r;
  r.scenario = "futaki-character";
  r.params["radius"] = o.radius;
  r.params["seed"] = o.c.seed;

  Rng rng(o.c.seed);
  const CartanBundle b = sl2_bundle(rng);
  const StabilizerBasis stab = stabilizer_basis(b, b.identity_point());
  const GroupElement p = generic_point(b, rng, o.radius);

  double worst_bracket = 0.0;
  for (size_t i = 0; i < stab.basis.size(); ++i)
    for (size_t j = i + 1; j < stab.basis.size(); ++j)
      worst_bracket = std::max(
          worst_bracket, character_defect(b, p, stab.basis[i], stab.basis[j]));
  r.below("bracket_characters_vanish", "futakiIsCharacter", worst_bracket,
          o.c.gate(tols::character_defect));
  r.below("nilpotent_direction_value", "futakiIsCharacter",
          std::abs(futaki_character(b, b.identity_point(), mat_e())),
          tols::futaki_nilpotent);

  const double at_p = futaki_character(b, p, mat_h());
  const double at_id = futaki_character(b, b.identity_point(), mat_h());
  r.below("transport_invariance", "constFutaki",
          std::abs(at_p - at_id) / (1.0 + std::abs(at_id)),
          tols::futaki_spread_rel);
  return r;
}

struct ProfileOpts {
  Common c;
  std::string group = "torus";
  double radius = 1.5;
  int samples = 61;
  int probes = 40;
};

RunOutcome run_kn_profile(const ProfileOpts& o) {
  RunOutcome r;
  r.scenario = "kn-profile";
  r.params["group"] = o.group;
  r.params["radius"] = o.radius;
  r.params["samples"] = o.samples;
  r.params["probes"] = o.probes;
  r.params["seed"] = o.c.seed;

  Rng rng(o.c.seed);
  const bool torus = o.group == "torus";
  CartanBundle b = torus ? torus_bundle(parse_weights("1,-1"),
                                        cvec({1.0, 1.0}), rng)
                         : sl2_bundle(rng);
  Matrix xi;
  if (torus) {
    xi = Matrix::Zero(1, 1);
    xi(0, 0) = 1.0;
  } else {
    xi = mat_h();
  }

  double worst_rate = 0.0;
  for (int k = 0; k < o.probes; ++k) {
    const GroupElement a = generic_point(b, rng, 0.7);
    const Matrix zeta = b.klein.random_ambient(rng, 0.8);
    worst_rate = std::max(worst_rate, kn_derivative_defect(b, a, zeta));
  }
  r.below("derivative_identity", "kempfNess:firstDerivativeGeneral",
          worst_rate, o.c.gate(tols::kn_derivative));

  const KnProfile prof = kn_profile(b, b.identity_point(), xi, -o.radius,
                                    o.radius, o.samples);
  r.below("rate_integrates_energy", "kempfNess", prof.max_integration_gap,
          tols::kn_closed_form);
  if (torus) {
    double gap = 0.0;
    for (int i = 0; i < prof.t.size(); ++i)
      gap = std::max(gap, std::abs(prof.energy[i] -
                                   0.5 * std::log(std::cosh(2.0 * prof.t[i]))));
    r.below("closed_form_match", "kempfNess", gap, tols::kn_closed_form);
    if (o.samples % 2 == 1)
      r.below("second_derivative_origin", "kempfNess",
              std::abs(prof.curvature[o.samples / 2] - 2.0),
              tols::kn_second_deriv);
  }

  const ConvexityReport conv =
      kn_convexity(b, b.identity_point(), xi, -0.8, 0.8, 25);
  r.above("convexity_floor", "kempfNess", conv.min_curvature,
          tols::convexity_floor);
  r.below("curvature_matches_metric", "kempfNess", conv.max_norm_gap,
          tols::convexity_match);

  std::string csv = "t,energy,energy_integrated,rate,curvature\n";
  for (int i = 0; i < prof.t.size(); ++i)
    csv_row(csv, "%.17g,%.17g,%.17g,%.17g,%.17g", prof.t[i], prof.energy[i],
            prof.energy_integrated[i], prof.rate[i], prof.curvature[i]);
  save_artifact(r, o.c, "kn-profile.csv", csv);
  return r;
}

struct SlopeOpts {
  Common c;
  std::string weights = "1,-1";
  std::string vector_spec = "1,1";
  std::string direction = "1";
};

RunOutcome run_slope(const SlopeOpts& o) {
  RunOutcome r;
  r.scenario = "slope";
  r.params["weights"] = o.weights;
  r.params["vector"] = o.vector_spec;
  r.params["direction"] = o.direction;
  r.params["seed"] = o.c.seed;

  Rng rng(o.c.seed);
  const Eigen::MatrixXi W = parse_weights(o.weights);
  const RealVector s = parse_reals(o.direction);
  if (s.size() != W.cols())
    throw config_error("direction length must match the weight column count");
  CartanBundle b = torus_bundle(W, parse_vector(o.vector_spec), rng, 20);
  const std::vector<bool> mask = support_mask(b.base.v);

  const SlopeResult sr = kn_slope(b, b.identity_point(), torus_direction(s));
  const double expected = weight_slope(W, mask, s);
  {
    char note[128];
    std::snprintf(note, sizeof note, "slope: %.12g (weight oracle: %.12g)",
                  sr.slope, expected);
    r.notes.push_back(note);
  }
  r.below("slope_matches_weight_oracle", "stability",
          std::abs(sr.slope - expected), o.c.gate(tols::slope_match));
  r.below("slope_plateau", "stability", sr.plateau_gap, tols::slope_flatness);
  return r;
}

struct StabilityOpts {
  Common c;
  std::string weights = "1,-1";
  std::string vector_spec = "1,1";
  int radius = 2;
};

RunOutcome run_stability(const StabilityOpts& o) {
  RunOutcome r;
  r.scenario = "stability";
  r.params["weights"] = o.weights;
  r.params["vector"] = o.vector_spec;
  r.params["radius"] = o.radius;
  r.params["seed"] = o.c.seed;

  Rng rng(o.c.seed);
  const Eigen::MatrixXi W = parse_weights(o.weights);
  CartanBundle b = torus_bundle(W, parse_vector(o.vector_spec), rng, 20);
  const std::vector<bool> mask = support_mask(b.base.v);
  const TorusStabilityCertificate cert = classify_torus_weights(W, mask);

  std::vector<RealVector> sdirs;
  for (const Eigen::VectorXi& s :
       integer_directions(static_cast<int>(W.cols()), o.radius))
    sdirs.push_back(s.cast<double>());
  for (const Eigen::VectorXi& s : cert.candidates)
    sdirs.push_back(s.cast<double>());

  std::vector<Matrix> dirs;
  for (const RealVector& s : sdirs) dirs.push_back(torus_direction(s));
  const StabilityReport rep = classify_stability(b, b.identity_point(), dirs);
  {
    char note[128];
    std::snprintf(note, sizeof note, "label: %s  min_slope: %.12g",
                  to_string(rep.label).c_str(), rep.min_slope);
    r.notes.push_back(note);
  }
  r.below("label_matches_certificate", "stability",
          rep.label == cert.label ? 0.0 : 1.0, 0.0);

  double worst_ray = 0.0;
  const size_t probe_count = std::min<size_t>(sdirs.size(), 8);
  for (size_t i = 0; i < probe_count; ++i) {
    const SlopeResult sr =
        kn_slope(b, b.identity_point(), torus_direction(sdirs[i]));
    worst_ray =
        std::max(worst_ray, std::abs(sr.slope - weight_slope(W, mask, sdirs[i])));
  }
  r.below("ray_slope_agreement", "stability", worst_ray,
          o.c.gate(tols::slope_match));

  double oracle_min = std::numeric_limits<double>::infinity();
  for (const RealVector& s : sdirs)
    oracle_min = std::min(
        oracle_min, weight_slope(W, mask, s) / fnorm(torus_direction(s)));
  r.below("min_slope_agreement", "stability",
          std::abs(rep.min_slope - oracle_min), tols::slope_match);
  return r;
}

struct DescendOpts {
  Common c;
  std::string weights = "1,-1";
  std::string vector_spec = "1,1";
  double radius = 0.6;
};

RunOutcome run_descend(const DescendOpts& o) {
  RunOutcome r;
  r.scenario = "descend";
  r.params["weights"] = o.weights;
  r.params["vector"] = o.vector_spec;
  r.params["radius"] = o.radius;
  r.params["seed"] = o.c.seed;

  Rng rng(o.c.seed);
  CartanBundle b =
      torus_bundle(parse_weights(o.weights), parse_vector(o.vector_spec),
                   rng, 20);
  const GroupElement start =
      b.ambient_exp(b.klein.random_ambient(rng, o.radius));
  const double start_energy = kn_energy(b, start);

  const MomentumZeroResult res = find_momentum_zero(b, start);
  {
    char note[128];
    std::snprintf(note, sizeof note,
                  "momentum zero after %d iterations, residual %.3g",
                  res.iterations, res.residual);
    r.notes.push_back(note);
  }
  r.below("momentum_zero_residual", "kempfNess:positive", res.residual,
          o.c.gate(tols::zero_residual));
  r.below("energy_not_increased", "kempfNess",
          kn_energy(b, res.point) - start_energy, 0.0);
  r.below("iterations_within_budget", "kempfNess:positive",
          static_cast<double>(res.iterations), 20000.0);
  return r;
}

struct ExtremalOpts {
  Common c;
  std::string group = "sl2";
  double radius = 0.7;
};

RunOutcome run_extremal(const ExtremalOpts& o) {
  RunOutcome r;
  r.scenario = "extremal";
  r.params["group"] = o.group;
  r.params["radius"] = o.radius;
  r.params["seed"] = o.c.seed;

  Rng rng(o.c.seed);
  CartanBundle b;
  Matrix expected;
  if (o.group == "sl2") {
    b = sl2_bundle(rng);
    expected = 0.5 * mat_h();
  } else {
    b = torus_bundle(parse_weights("1,-1"), cvec({1.0, 0.0}), rng);
    expected = Matrix::Zero(1, 1);
    expected(0, 0) = 1.0;
  }

  const StabilizerBasis stab = stabilizer_basis(b, b.identity_point());
  const Matrix zeta0 = extremal_element(b, b.identity_point(), stab.basis);
  r.below("golden_representative", "extremal1", (zeta0 - expected).norm(),
          tols::uniqueness_defect);

  const GroupElement p = generic_point(b, rng, o.radius);
  const Matrix zeta_p = extremal_element(b, p, stab.basis);
  r.below("point_independence", "extremal1", (zeta_p - zeta0).norm(),
          tols::uniqueness_defect);

  double residual = 0.0;
  for (const Matrix& d : stab.basis)
    residual = std::max(residual, std::abs(xi_form(b.klein, zeta_p, d) -
                                           futaki_character(b, p, d)));
  r.below("defining_equations", "extremal1", residual,
          o.c.gate(tols::uniqueness_defect));
  return r;
}

struct Cp1FutakiOpts {
  Common c;
  int n = 512;
  int samples = 20;
  double eps = 0.05;
};

RunOutcome run_cp1_futaki(const Cp1FutakiOpts& o) {
  RunOutcome r;
  r.scenario = "cp1-futaki";
  r.params["n"] = o.n;
  r.params["samples"] = o.samples;
  r.params["eps"] = o.eps;
  r.params["seed"] = o.c.seed;

  const SymplecticPotential1D ref = SymplecticPotential1D::reference(o.n);
  const RealVector S = scalar_curvature(ref);
  double round_gap = 0.0;
  for (int i = 0; i < S.size(); ++i)
    round_gap = std::max(round_gap, std::abs(S[i] - 2.0));
  r.below("scalar_curvature_round", "obst1", round_gap, tols::fs_scalar);

  Rng rng(o.c.seed);
  double worst_futaki = 0.0;
  double worst_total = 0.0;
  for (int k = 0; k < o.samples; ++k) {
    const SymplecticPotential1D u = random_admissible(o.n, rng, o.eps);
    worst_futaki = std::max(worst_futaki, std::abs(futaki_cp1(u)));
    worst_total =
        std::max(worst_total, std::abs(2.0 * average_scalar(u) - 4.0));
  }
  r.below("futaki_integral_vanishes", "obst1", worst_futaki,
          o.c.gate(tols::cp1_futaki));
  r.below("total_curvature_topological", "obst1", worst_total,
          tols::cp1_total_curvature);
  return r;
}

struct Cp1KenergyOpts {
  Common c;
  int n = 256;
  double eps = 0.05;
  int path_samples = 41;
};

RunOutcome run_cp1_kenergy(const Cp1KenergyOpts& o) {
  RunOutcome r;
  r.scenario = "cp1-kenergy";
  r.params["n"] = o.n;
  r.params["eps"] = o.eps;
  r.params["path_samples"] = o.path_samples;
  r.params["seed"] = o.c.seed;

  const SymplecticPotential1D ref = SymplecticPotential1D::reference(o.n);
  const SymplecticPotential1D u1 = sampled_correction(
      o.n, [&](double x) { return o.eps * smooth_bump(x); });

  std::vector<SymplecticPotential1D> path;
  for (int k = 0; k < o.path_samples; ++k)
    path.push_back(toric_geodesic(ref, u1, double(k) / (o.path_samples - 1)));
  const double e_path = k_energy_kempf1(path);
  const double e_closed = k_energy_closed(u1);
  r.below("path_vs_closed_form", "Kempf1", std::abs(e_path - e_closed),
          o.c.gate(tols::kempf1_path));

  std::vector<SymplecticPotential1D> warped;
  for (int k = 0; k < o.path_samples; ++k) {
    const double tau = double(k) / (o.path_samples - 1);
    warped.push_back(toric_geodesic(ref, u1, tau * tau * (3.0 - 2.0 * tau)));
  }
  r.below("reparametrization_invariance", "Kempf1",
          std::abs(k_energy_kempf1(warped) - e_path), tols::kempf1_path);

  const KEnergyValue kv = k_energy_chentian(u1);
  r.below("chentian_agreement", "ChenTian",
          std::abs(kv.value - e_closed) / (1.0 + std::abs(e_closed)),
          tols::chentian_rel);
  r.above("energy_positive_off_round", "Kempf1", e_closed, 0.0);
  r.below("round_metric_energy", "Kempf1", k_energy_closed(ref),
          tols::kempf1_path);

  std::string csv = "t,energy\n";
  for (int k = 0; k < o.path_samples; ++k)
    csv_row(csv, "%.17g,%.17g", double(k) / (o.path_samples - 1),
            k_energy_closed(path[k]));
  save_artifact(r, o.c, "cp1-kenergy.csv", csv);
  return r;
}

struct Cp1GeodesicOpts {
  Common c;
  int n = 256;
  int probes = 25;
};

RunOutcome run_cp1_geodesic(const Cp1GeodesicOpts& o) {
  RunOutcome r;
  r.scenario = "cp1-geodesic";
  r.params["n"] = o.n;
  r.params["probes"] = o.probes;
  r.params["seed"] = o.c.seed;

  const auto f0 = [](double x) { return 0.05 * smooth_bump(x); };
  const auto f1 = [](double x) {
    return smooth_bump(x) * (-0.03 + 0.04 * x + 0.02 * std::sin(3.0 * x));
  };
  const SymplecticPotential1D u0 = sampled_correction(o.n, f0);
  const SymplecticPotential1D u1 = sampled_correction(o.n, f1);

  const double coarse = geodesic_residual(u0, u1, o.probes);
  const double fine =
      geodesic_residual(sampled_correction(2 * o.n, f0),
                        sampled_correction(2 * o.n, f1), o.probes);
  const double ratio = coarse / fine;
  {
    char note[128];
    std::snprintf(note, sizeof note,
                  "segment residual %.3g -> %.3g under refinement (ratio %.3g)",
                  coarse, fine, ratio);
    r.notes.push_back(note);
  }
  r.above("residual_ratio_above", "geodesicsAsProjections", ratio,
          tols::cp1_residual_ratio_low);
  r.below("residual_ratio_below", "geodesicsAsProjections", ratio,
          tols::cp1_residual_ratio_high);

  r.below("legendre_roundtrip", "geodesicsAsProjections",
          legendre_roundtrip(u1, kahler_potential(u1)),
          o.c.gate(tols::legendre_roundtrip));

  const int samples = 21;
  RealVector energies(samples);
  for (int k = 0; k < samples; ++k)
    energies[k] =
        k_energy_closed(toric_geodesic(u0, u1, double(k) / (samples - 1)));
  double min_second = std::numeric_limits<double>::infinity();
  const double dt = 1.0 / (samples - 1);
  for (int k = 1; k + 1 < samples; ++k)
    min_second = std::min(min_second, (energies[k + 1] - 2.0 * energies[k] +
                                       energies[k - 1]) /
                                          (dt * dt));
  r.above("segment_energy_convex", "Kempf1", min_second,
          tols::kenergy_convexity_floor);

  std::string csv = "t,energy\n";
  for (int k = 0; k < samples; ++k)
    csv_row(csv, "%.17g,%.17g", k * dt, energies[k]);
  save_artifact(r, o.c, "cp1-geodesic.csv", csv);
  return r;
}

struct Cp1DescendOpts {
  Common c;
  int n = 256;
  double eps = 0.05;
  int iters = 500;
};

RunOutcome run_cp1_descend(const Cp1DescendOpts& o) {
  RunOutcome r;
  r.scenario = "cp1-descend";
  r.params["n"] = o.n;
  r.params["eps"] = o.eps;
  r.params["iters"] = o.iters;
  r.params["seed"] = o.c.seed;

  const SymplecticPotential1D u0 = sampled_correction(
      o.n, [&](double x) { return o.eps * smooth_bump(x); });
  const DescentResult res =
      k_energy_descent(u0, 1.0, o.iters, o.c.gate(tols::descent_sup));
  {
    char note[128];
    std::snprintf(note, sizeof note,
                  "%zu iterations, final energy %.3g, final defect %.3g",
                  res.trajectory.size(), res.trajectory.back().energy,
                  res.trajectory.back().sup_defect);
    r.notes.push_back(note);
  }
  r.below("convergence_failures", "kempfNess:positive",
          res.converged ? 0.0 : 1.0, 0.0);
  r.below("final_sup_defect", "calabiOperator",
          res.trajectory.back().sup_defect, o.c.gate(tols::descent_sup));

  double max_increase = -std::numeric_limits<double>::infinity();
  for (size_t k = 1; k < res.trajectory.size(); ++k)
    max_increase = std::max(max_increase, res.trajectory[k].energy -
                                              res.trajectory[k - 1].energy);
  if (res.trajectory.size() < 2) max_increase = 0.0;
  r.below("energy_monotone", "Kempf1", max_increase,
          tols::descent_monotonicity);

  std::string csv = "iter,energy,sup_defect\n";
  for (const DescentRow& row : res.trajectory)
    csv_row(csv, "%d,%.17g,%.17g", row.iter, row.energy, row.sup_defect);
  save_artifact(r, o.c, "cp1-descend.csv", csv);
  return r;
}

struct DensityOpts {
  Common c;
  int n = 256;
  double dt = 1e-3;
  int steps = 50;
};

RunOutcome run_density_geodesic(const DensityOpts& o) {
  RunOutcome r;
  r.scenario = "density-geodesic";
  r.params["n"] = o.n;
  r.params["dt"] = o.dt;
  r.params["steps"] = o.steps;
  r.params["seed"] = o.c.seed;

  Rng rng(o.c.seed);
  const DensityOnCircle rho_r = bumpy_density(o.n, rng);
  const RealVector field_r = random_field(o.n, rng);
  const HelmholtzParts parts = helmholtz_1d(field_r, rho_r);
  r.below("helmholtz_reconstruction", "helmholtzDecomposition",
          helmholtz_reconstruction_residual(field_r, rho_r, parts),
          tols::helmholtz_residual);

  const DensityOnCircle rho0 = DensityOnCircle::normalize(
      sampled_circle(o.n, [](double x) { return 1.0 + 0.3 * std::cos(x); }));
  const PotentialFunction f = PotentialFunction::normalize(
      sampled_circle(o.n, [](double x) { return std::cos(x); }));
  double drift = 0.0;
  for (const double t : {0.25, 0.5, 1.0})
    drift = std::max(drift,
                     std::abs(cartan_geodesic_density(rho0, f, t).mass() - 1.0));
  r.below("mass_conservation", "informationGeometry", drift, tols::mass_drift);

  const std::vector<DensityOnCircle> traj =
      geodesic_trajectory(rho0, f, o.dt, o.steps);
  const double res1 = continuity_residual(traj, f, o.dt);
  r.below("continuity_residual", "informationGeometry", res1,
          o.c.gate(tols::continuity));

  const int n2 = 2 * o.n;
  const DensityOnCircle rho0f = DensityOnCircle::normalize(
      sampled_circle(n2, [](double x) { return 1.0 + 0.3 * std::cos(x); }));
  const PotentialFunction f2 = PotentialFunction::normalize(
      sampled_circle(n2, [](double x) { return std::cos(x); }));
  const double res2 = continuity_residual(
      geodesic_trajectory(rho0f, f2, 0.5 * o.dt, 2 * o.steps), f2, 0.5 * o.dt);
  const double ratio = res1 / res2;
  {
    char note[128];
    std::snprintf(note, sizeof note,
                  "continuity residual %.3g -> %.3g under refinement (ratio %.3g)",
                  res1, res2, ratio);
    r.notes.push_back(note);
  }
  r.above("continuity_ratio_above", "informationGeometry", ratio,
          tols::continuity_ratio_low);
  r.below("continuity_ratio_below", "informationGeometry", ratio,
          tols::continuity_ratio_high);

  std::ostringstream csv;
  write_trajectory_csv(csv, traj, o.dt);
  save_artifact(r, o.c, "density-geodesic.csv", csv.str());
  return r;
}

// ---------------------------------------------------------------------------
// registry

struct Entry {
  const char* name;
  const char* anchor;
  const char* brief;
  std::function<RunOutcome(const Common&)> with_defaults;
};

std::vector<Entry> registry() {
  return {
      {"certify", "momentum1",
       "equivariance and defining-relation residuals for the orbit momentum map",
       [](const Common& c) { return run_certify({c}); }},
      {"futaki-constancy", "constFutaki",
       "point-independence sweep of the character integral",
       [](const Common& c) { return run_futaki_constancy({c}); }},
      {"futaki-character", "futakiIsCharacter",
       "character kills brackets and nilpotent directions",
       [](const Common& c) { return run_futaki_character({c}); }},
      {"kn-profile", "kempfNess",
       "energy profile along a geodesic ray: derivative, closed form, convexity",
       [](const Common& c) { return run_kn_profile({c}); }},
      {"slope", "stability",
       "asymptotic energy slope against the integer weight oracle",
       [](const Common& c) { return run_slope({c}); }},
      {"stability", "stability",
       "sign-of-slope classification against the exact polytope certificate",
       [](const Common& c) { return run_stability({c}); }},
      {"descend", "kempfNess:positive",
       "gradient descent of the energy to a momentum zero",
       [](const Common& c) { return run_descend({c}); }},
      {"extremal", "extremal1",
       "character representative through the slice form, with uniqueness checks",
       [](const Common& c) { return run_extremal({c}); }},
      {"cp1-futaki", "obst1",
       "rotation character integral on the projective line vanishes",
       [](const Common& c) { return run_cp1_futaki({c}); }},
      {"cp1-kenergy", "Kempf1",
       "energy of metric paths: quadrature, closed form, decomposition agree",
       [](const Common& c) { return run_cp1_kenergy({c}); }},
      {"cp1-geodesic", "geodesicsAsProjections",
       "segment residual refinement order and dual-potential round trip",
       [](const Common& c) { return run_cp1_geodesic({c}); }},
      {"cp1-descend", "calabiOperator",
       "damped Newton descent to the constant-curvature metric",
       [](const Common& c) { return run_cp1_descend({c}); }},
      {"density-geodesic", "informationGeometry",
       "density transport on the circle: splitting, mass, continuity",
       [](const Common& c) { return run_density_geodesic({c}); }},
  };
}

void add_common(CLI::App* sub, Common* c) {
  sub->add_option("--out", c->out, "output directory for reports and CSV")
      ->capture_default_str();
  sub->add_option("--seed", c->seed, "random seed")->capture_default_str();
  sub->add_option("--tol", c->tol,
                  "override for the scenario's headline tolerance")
      ->check(CLI::PositiveNumber);
}

template <typename F>
int dispatch(F&& make_outcome, const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  RunOutcome r = make_outcome();
  std::string text;
  const bool ok = finish(r, c, text);
  std::fputs(text.c_str(), stdout);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  std::fprintf(stderr, "# wall_ms %s: %lld\n", r.scenario.c_str(),
               static_cast<long long>(ms));
  return ok ? 0 : 1;
}

int run_all(const Common& c, int jobs) {
  const std::vector<Entry> entries = registry();
  std::vector<std::string> texts(entries.size());
  std::vector<int> codes(entries.size(), 0);
  std::atomic<size_t> next{0};

  const auto t0 = std::chrono::steady_clock::now();
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      try {
        RunOutcome r = entries[i].with_defaults(c);
        codes[i] = finish(r, c, texts[i]) ? 0 : 1;
      } catch (const std::exception& e) {
        texts[i] = std::string("scenario: ") + entries[i].name + "\n  error: " +
                   e.what() + "\n";
        codes[i] = 1;
      }
    }
  };
  const int thread_count =
      std::max(1, std::min<int>(jobs, static_cast<int>(entries.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  int rc = 0;
  int failed = 0;
  for (size_t i = 0; i < entries.size(); ++i) {
    std::fputs(texts[i].c_str(), stdout);
    if (codes[i] != 0) {
      rc = 1;
      ++failed;
    }
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  std::fprintf(stderr, "# wall_ms all: %lld\n", static_cast<long long>(ms));
  std::printf("%zu scenarios, %d failed\n", entries.size(), failed);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cartanlab: scenario gates for the momentum-map geometry library"};
  app.require_subcommand(1);
  int rc = 0;

  {
    auto o = std::make_shared<CertifyOpts>();
    CLI::App* s = app.add_subcommand(
        "certify", "momentum equivariance and defining-relation residuals");
    add_common(s, &o->c);
    s->add_option("--group", o->group, "model: sl2 | torus")
        ->check(CLI::IsMember({"sl2", "torus"}))
        ->capture_default_str();
    s->add_option("--samples", o->samples, "sample count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--radius", o->radius, "sampling radius")
        ->capture_default_str();
    s->callback(
        [o, &rc]() { rc = dispatch([&] { return run_certify(*o); }, o->c); });
  }
  {
    auto o = std::make_shared<ConstancyOpts>();
    CLI::App* s = app.add_subcommand(
        "futaki-constancy", "point-independence sweep of the character");
    add_common(s, &o->c);
    s->add_option("--group", o->group, "model: sl2 | torus")
        ->check(CLI::IsMember({"sl2", "torus"}))
        ->capture_default_str();
    s->add_option("--samples", o->samples, "sweep size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--radius", o->radius, "sampling radius")
        ->capture_default_str();
    s->callback([o, &rc]() {
      rc = dispatch([&] { return run_futaki_constancy(*o); }, o->c);
    });
  }
  {
    auto o = std::make_shared<CharacterOpts>();
    CLI::App* s = app.add_subcommand(
        "futaki-character", "character property checks on the stabilizer");
    add_common(s, &o->c);
    s->add_option("--radius", o->radius, "sampling radius")
        ->capture_default_str();
    s->callback([o, &rc]() {
      rc = dispatch([&] { return run_futaki_character(*o); }, o->c);
    });
  }
  {
    auto o = std::make_shared<ProfileOpts>();
    CLI::App* s = app.add_subcommand(
        "kn-profile", "energy profile along a geodesic ray");
    add_common(s, &o->c);
    s->add_option("--group", o->group, "model: torus | sl2")
        ->check(CLI::IsMember({"torus", "sl2"}))
        ->capture_default_str();
    s->add_option("--radius", o->radius, "profile half-width in time")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--samples", o->samples, "profile sample count")
        ->check(CLI::Range(5, 100000))
        ->capture_default_str();
    s->add_option("--probes", o->probes, "derivative-identity probe count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->callback([o, &rc]() {
      rc = dispatch([&] { return run_kn_profile(*o); }, o->c);
    });
  }
  {
    auto o = std::make_shared<SlopeOpts>();
    CLI::App* s = app.add_subcommand(
        "slope", "asymptotic energy slope along one ray");
    add_common(s, &o->c);
    s->add_option("--weights", o->weights,
                  "per-factor integer weights, e.g. \"1,0,-1;0,1,-1\"")
        ->capture_default_str();
    s->add_option("--vector", o->vector_spec, "real amplitudes of the point")
        ->capture_default_str();
    s->add_option("--direction", o->direction, "ray exponents")
        ->capture_default_str();
    s->callback(
        [o, &rc]() { rc = dispatch([&] { return run_slope(*o); }, o->c); });
  }
  {
    auto o = std::make_shared<StabilityOpts>();
    CLI::App* s = app.add_subcommand(
        "stability", "classification against the exact weight certificate");
    add_common(s, &o->c);
    s->add_option("--weights", o->weights, "per-factor integer weights")
        ->capture_default_str();
    s->add_option("--vector", o->vector_spec, "real amplitudes of the point")
        ->capture_default_str();
    s->add_option("--radius", o->radius, "integer ray radius")
        ->check(CLI::Range(1, 4))
        ->capture_default_str();
    s->callback([o, &rc]() {
      rc = dispatch([&] { return run_stability(*o); }, o->c);
    });
  }
  {
    auto o = std::make_shared<DescendOpts>();
    CLI::App* s = app.add_subcommand(
        "descend", "energy descent to a momentum zero");
    add_common(s, &o->c);
    s->add_option("--weights", o->weights, "per-factor integer weights")
        ->capture_default_str();
    s->add_option("--vector", o->vector_spec, "real amplitudes of the point")
        ->capture_default_str();
    s->add_option("--radius", o->radius, "start-point radius")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->callback(
        [o, &rc]() { rc = dispatch([&] { return run_descend(*o); }, o->c); });
  }
  {
    auto o = std::make_shared<ExtremalOpts>();
    CLI::App* s = app.add_subcommand(
        "extremal", "character representative through the slice form");
    add_common(s, &o->c);
    s->add_option("--group", o->group, "model: sl2 | torus")
        ->check(CLI::IsMember({"sl2", "torus"}))
        ->capture_default_str();
    s->add_option("--radius", o->radius, "sampling radius")
        ->capture_default_str();
    s->callback([o, &rc]() {
      rc = dispatch([&] { return run_extremal(*o); }, o->c);
    });
  }
  {
    auto o = std::make_shared<Cp1FutakiOpts>();
    CLI::App* s = app.add_subcommand(
        "cp1-futaki", "rotation character integral on the projective line");
    add_common(s, &o->c);
    s->add_option("--n", o->n, "grid segments (even, >= 8)")
        ->check(CLI::Range(8, 1 << 16))
        ->capture_default_str();
    s->add_option("--samples", o->samples, "random potentials to sweep")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--eps", o->eps, "correction amplitude")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->callback([o, &rc]() {
      rc = dispatch([&] { return run_cp1_futaki(*o); }, o->c);
    });
  }
  {
    auto o = std::make_shared<Cp1KenergyOpts>();
    CLI::App* s = app.add_subcommand(
        "cp1-kenergy", "energy of metric paths, three ways");
    add_common(s, &o->c);
    s->add_option("--n", o->n, "grid segments (even, >= 8)")
        ->check(CLI::Range(8, 1 << 16))
        ->capture_default_str();
    s->add_option("--eps", o->eps, "correction amplitude")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--path-samples", o->path_samples, "time samples on the path")
        ->check(CLI::Range(5, 100000))
        ->capture_default_str();
    s->callback([o, &rc]() {
      rc = dispatch([&] { return run_cp1_kenergy(*o); }, o->c);
    });
  }
  {
    auto o = std::make_shared<Cp1GeodesicOpts>();
    CLI::App* s = app.add_subcommand(
        "cp1-geodesic", "segment residual refinement and round trip");
    add_common(s, &o->c);
    s->add_option("--n", o->n, "grid segments (even, >= 8)")
        ->check(CLI::Range(8, 1 << 15))
        ->capture_default_str();
    s->add_option("--probes", o->probes, "interior probe times")
        ->check(CLI::Range(2, 10000))
        ->capture_default_str();
    s->callback([o, &rc]() {
      rc = dispatch([&] { return run_cp1_geodesic(*o); }, o->c);
    });
  }
  {
    auto o = std::make_shared<Cp1DescendOpts>();
    CLI::App* s = app.add_subcommand(
        "cp1-descend", "descent to the constant-curvature metric");
    add_common(s, &o->c);
    s->add_option("--n", o->n, "grid segments (even, >= 8)")
        ->check(CLI::Range(8, 1 << 16))
        ->capture_default_str();
    s->add_option("--eps", o->eps, "correction amplitude")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--iters", o->iters, "iteration budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->callback([o, &rc]() {
      rc = dispatch([&] { return run_cp1_descend(*o); }, o->c);
    });
  }
  {
    auto o = std::make_shared<DensityOpts>();
    CLI::App* s = app.add_subcommand(
        "density-geodesic", "density transport on the circle");
    add_common(s, &o->c);
    s->add_option("--n", o->n, "node count (>= 8)")
        ->check(CLI::Range(8, 1 << 16))
        ->capture_default_str();
    s->add_option("--dt", o->dt, "trajectory time step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    s->add_option("--steps", o->steps, "trajectory step count")
        ->check(CLI::Range(3, 1 << 20))
        ->capture_default_str();
    s->callback([o, &rc]() {
      rc = dispatch([&] { return run_density_geodesic(*o); }, o->c);
    });
  }
  {
    CLI::App* s = app.add_subcommand("list", "print the scenario registry");
    s->callback([&rc]() {
      std::printf("%-18s %-36s %s\n", "scenario", "anchor", "description");
      for (const Entry& e : registry())
        std::printf("%-18s %-36s %s\n", e.name, e.anchor, e.brief);
      rc = 0;
    });
  }
  {
    auto c = std::make_shared<Common>();
    auto jobs = std::make_shared<int>(1);
    CLI::App* s = app.add_subcommand(
        "all", "run every registry scenario with default parameters");
    add_common(s, c.get());
    s->add_option("--jobs", *jobs, "worker threads")
        ->check(CLI::Range(1, 16))
        ->capture_default_str();
    s->callback([c, jobs, &rc]() { rc = run_all(*c, *jobs); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return rc;
}
