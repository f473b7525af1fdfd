#pragma once

#include "gbv/quadrature.hpp"

namespace gbv {

struct FluxLadderRow {
    double epsilon;
    double flux_v_over_2pi; ///< (1/2pi) circle flux of the full log-factor
    double flux_u_over_2pi; ///< (1/2pi) circle flux of the regular part
    double abs_du_flux;     ///< eps * integral |du/dz| |dz|
};

struct FluxRecord {
    std::string point;
    SingularKind kind = SingularKind::Cone;
    double order = 0.0; ///< cone order; -1 for a cusp
    std::vector<FluxLadderRow> ladder;
};

struct LadderDiagnostics {
    std::vector<LadderEntry> total_ladder; ///< (eps, integral of K dA over S_eps)
    ExtrapolationInfo extrapolation;
    /// Fitted decay rate of eps * integral |du/dz| |dz| per singular point.
    std::vector<std::pair<std::string, double>> decay_exponents;
};

struct HypothesisChecks {
    ConvergenceVerdict l1_curvature = ConvergenceVerdict::Inconclusive;
    std::vector<std::pair<std::string, ConvergenceVerdict>> dirichlet_energy;
};

struct VerificationReport {
    double chi = 0.0;
    double total_curvature_over_2pi = 0.0;
    double residual = 0.0; ///< total_curvature_over_2pi - chi
    std::vector<FluxRecord> per_singularity;
    LadderDiagnostics ladder_diagnostics;
    HypothesisChecks hypothesis_checks;
    double tolerance = 1e-4;
    bool pass = false;
};

/// Full verification of (1/2pi) integral K dA = chi(S, beta) on a compact model:
/// extrapolated total curvature, per-singularity flux ladders, decay data,
/// integrability diagnostics. PASS iff |residual| <= tolerance.
VerificationReport verify_gauss_bonnet(const ConformalMetric& m, const GradedScheme& scheme,
                                       double tolerance = 1e-4);

/// Per-singularity circle-flux ladders over the scheme's radii (restricted to
/// each decomposition radius). Works on local patches too.
std::vector<FluxRecord> flux_ladders(const ConformalMetric& m, const GradedScheme& scheme);

/// Discrepancy |(1/2pi) integral over S_eps of (K dA - K1 dA1)
///              - (1/2pi) sum_i circle flux of (v - v1)|
/// for a smooth background metric on the same surface; an exact identity, so
/// the result should sit at quadrature level for every eps.
double greens_identity_check(const ConformalMetric& m, const ConformalMetric& background,
                             double eps, const GradedScheme& scheme);

/// Same with the default background: round sphere on genus 0, flat torus on genus 1.
double greens_identity_check(const ConformalMetric& m, double eps, const GradedScheme& scheme);

struct FluxDecomposition {
    double beta_term;        ///< the cone order
    double residual_flux;    ///< (1/2pi) circle flux of the regular part
    double v_flux_over_2pi;  ///< (1/2pi) circle flux of the full log-factor
    double identity_gap;     ///< |v_flux - beta - residual_flux|
};

/// Splits the circle flux of v at radius eps around cone i into order + regular flux.
FluxDecomposition flux_decomposition(const ConformalMetric& m, std::size_t index, double eps,
                                     int n_angular);

struct CuspFluxDecomposition {
    double leading;         ///< -1
    double log_correction;  ///< -1/log(eps)
    double residual_flux;   ///< (1/2pi) circle flux of the regular part
    double v_flux_over_2pi;
    double identity_gap;    ///< |v_flux - (leading + log_correction + residual_flux)|
};

/// Cusp analogue: (1/2pi) flux of v = -1 - 1/log(eps) + (1/2pi) flux of u.
CuspFluxDecomposition cusp_flux(const ConformalMetric& m, std::size_t index, double eps,
                                int n_angular);

struct DecayRow {
    double epsilon;
    double dz_value;    ///< eps * integral |du/dz| |dz|
    double dzbar_value; ///< eps * integral |du/dzbar| |dz|
};

struct DecayScan {
    std::vector<DecayRow> ladder;
    double exponent_dz = 0.0;    ///< fitted decay rate of the dz sequence
    double exponent_dzbar = 0.0;
    bool pass = false;
};

/// Ladder of the boundary decay quantities of the regular part at singularity i.
/// PASS when the final three entries are non-increasing and the last falls
/// below 1e-3 * (first + 1e-12).
DecayScan regular_part_decay(const ConformalMetric& m, std::size_t index,
                             const GradedScheme& scheme);

struct RiemannHurwitzResult {
    int degree = 1;
    double chi_base = 0.0;
    double chi_pullback = 0.0;
    double total_pullback_over_2pi = 0.0;
    double chi_relation_residual = 0.0; ///< chi_pullback - degree * chi_base (exact arithmetic)
    double gb_residual = 0.0;           ///< total_pullback_over_2pi - chi_pullback
};

/// Pulls the metric back under z -> z^n and checks chi' = n chi both by
/// arithmetic and by quadrature on the pullback.
RiemannHurwitzResult riemann_hurwitz_check(const ConformalMetric& m, int n,
                                           const GradedScheme& scheme);

} // namespace gbv
