#pragma once

namespace cartanlab::tols {

// Shared numerical gates.  The test suite and the CLI scenarios both read
// these constants so a tolerance is never duplicated.

inline constexpr double element_invariant = 1e-10;   // tag invariants on construction
inline constexpr double structure_identity = 1e-12;  // Jacobi / homomorphism checks
inline constexpr double polar_roundtrip = 1e-9;

inline constexpr double momentum_defect = 1e-6;      // defining-relation residual
inline constexpr double cocycle = 1e-8;              // equivariance defect of J
inline constexpr double a_equivariance = 1e-5;       // Calabi symmetry defect
inline constexpr double rho_fd_match = 1e-6;
inline constexpr double stabilizer_cutoff = 1e-8;    // singular-value cutoff
inline constexpr double stabilizer_gap = 0.1;        // ambiguity ratio

inline constexpr double kn_derivative = 1e-6;        // lifted derivative identity
inline constexpr double kn_closed_form = 1e-8;       // profile vs closed form
inline constexpr double kn_second_deriv = 1e-6;
inline constexpr double convexity_floor = -1e-8;     // second differences
inline constexpr double convexity_match = 1e-4;      // d2psi vs metric norm
inline constexpr double loop_exactness = 1e-5;       // |closed loop integral|
inline constexpr double slope_flatness = 1e-9;       // plateau detector
inline constexpr double slope_match = 1e-6;          // slope vs weight oracle
inline constexpr double zero_residual = 1e-8;        // momentum-zero pairing
inline constexpr double uniqueness_defect = 1e-6;

inline constexpr double futaki_spread_rel = 1e-5;    // constancy sweep
inline constexpr double futaki_nilpotent = 1e-6;
inline constexpr double character_defect = 1e-6;
inline constexpr double xi_form_spread = 1e-6;
inline constexpr double extremal_condition = 1e8;    // condition-number ceiling

inline constexpr double fs_scalar = 1e-6;            // round-metric curvature
inline constexpr double cp1_futaki = 1e-4;
inline constexpr double cp1_total_curvature = 1e-6;
inline constexpr double kempf1_path = 1e-6;
inline constexpr double chentian_rel = 1e-3;
inline constexpr double kenergy_convexity_floor = -1e-6;
inline constexpr double legendre_roundtrip = 1e-8;
inline constexpr double descent_sup = 1e-3;
inline constexpr double descent_monotonicity = 1e-12;  // permitted uphill step
inline constexpr double cp1_residual_ratio_low = 2.5;  // second-order window
inline constexpr double cp1_residual_ratio_high = 6.5;

inline constexpr double mass_drift = 1e-8;
inline constexpr double continuity = 1e-4;
inline constexpr double helmholtz_residual = 1e-8;
inline constexpr double continuity_ratio_low = 2.8;    // second-order window
inline constexpr double continuity_ratio_high = 5.5;

}  // namespace cartanlab::tols
