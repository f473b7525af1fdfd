#pragma once

#include "gbv/calculus.hpp"
#include "gbv/parallel.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gbv {

/// Quadrature layout: excision ladder, graded radial resolution near
/// singularities, angular and bulk resolutions, extrapolation control.
struct GradedScheme {
    /// Decreasing excision radii; default 0.1 * 2^-k, k = 0..8.
    std::vector<double> excision_ladder = default_ladder();
    /// Radial cells across each graded annulus [eps, decomposition radius].
    int radial_levels = 48;
    /// Uniform angular samples per circle of cells.
    int angular_count = 512;
    /// Radial cells per unit length away from singularities (torus: per side unit).
    int bulk_resolution = 64;
    /// Fixed residual decay exponent for extrapolation; empty fits it from the ladder.
    std::optional<double> richardson_order;

    static std::vector<double> default_ladder();
    void validate() const;
};

/// One quadrature sample: chart, coordinate, and flat-measure weight
/// (the d A-bar weight of its cell, Jacobians included).
struct Cell {
    int chart;
    cplx z;
    double weight;
};

using Integrand = std::function<double(int chart, cplx z)>;

/// Cells covering S_eps = surface minus eps-disks around the singular points,
/// in canonical deterministic order. Sphere integrals split across the two
/// charts at |z| = sphere_split (default the unit circle). Singular points
/// must sit at chart centers; annuli are graded geometrically for cones and
/// in t = -1/log r for cusps, with 4-node Gauss cells radially and uniform
/// midpoint angles.
std::vector<Cell> surface_cells(const ConformalMetric& m, const GradedScheme& scheme, double eps,
                                double sphere_split = 1.0);

/// Annulus r_in < |z - a_i| < r_out around singular point i, flat measure.
std::vector<Cell> annulus_cells(const ConformalMetric& m, std::size_t index, double r_in,
                                double r_out, const GradedScheme& scheme);

/// Deterministic reduction of f over cells: parallel evaluation into the
/// canonical-order buffer, pairwise sum. Throws numeric_error naming the first
/// offending cell if any sample is non-finite.
double integrate_cells(std::span<const Cell> cells, const Integrand& f);

/// integral over S_eps of (integrand) dA with dA = e^{2v} dA-bar.
double integrate_over_surface(const ConformalMetric& m, const Integrand& integrand,
                              const GradedScheme& scheme, double eps, double sphere_split = 1.0);

/// integral over S_eps of F dA-bar (flat chart measure) on the metric's
/// excised region decomposition.
double integrate_excised_flat(const ConformalMetric& m, const Integrand& F,
                              const GradedScheme& scheme, double eps);

struct LadderEntry {
    double epsilon;
    double value;
};

enum class ConvergenceVerdict { Converged, Diverging, Inconclusive };
std::string to_string(ConvergenceVerdict v);

/// How the eps -> 0 limit of a ladder was estimated.
struct ExtrapolationInfo {
    std::string model = "none"; ///< "power", "log", "settled", or "none"
    double exponent = 0.0;      ///< fitted q of residual ~ eps^q, or the 1/log eps coefficient
    double value = 0.0;         ///< estimated limit
};

/// Extrapolates the eps -> 0 limit: power-law residual fit for cone-only
/// divisors, A + B / log(eps) fit when a cusp is present, pass-through once the
/// ladder has settled to rounding level.
ExtrapolationInfo extrapolate_ladder(const std::vector<LadderEntry>& ladder, bool has_cusp,
                                     std::optional<double> forced_exponent);

struct TotalCurvatureResult {
    double value = 0.0; ///< extrapolated integral of K dA
    std::vector<LadderEntry> ladder;
    ExtrapolationInfo extrapolation;
};

/// integral of K dA over the excision ladder plus its extrapolated limit.
/// Compact surfaces only.
TotalCurvatureResult total_curvature(const ConformalMetric& m, const GradedScheme& scheme);

struct LpNormResult {
    double value = 0.0; ///< norm at the deepest ladder entry
    std::vector<LadderEntry> ladder; ///< (eps, (integral |K|^p dA)^{1/p})
    ConvergenceVerdict verdict = ConvergenceVerdict::Inconclusive;
    double growth_exponent = 0.0; ///< fitted when diverging
};

/// Ladder of (integral over S_eps of |K|^p dA)^{1/p} with a boundedness verdict.
LpNormResult curvature_lp_norm(const ConformalMetric& m, double p, const GradedScheme& scheme);

struct DirichletEnergyResult {
    std::vector<LadderEntry> ladder; ///< (eps, integral over annulus of |grad u|^2 dA-bar)
    ConvergenceVerdict verdict = ConvergenceVerdict::Inconclusive;
};

/// Annulus energies of the regular part u_i, |grad u|^2 = 4 |du/dz|^2, along the ladder.
DirichletEnergyResult dirichlet_energy(const ConformalMetric& m, std::size_t index,
                                       double outer_radius, const GradedScheme& scheme);

} // namespace gbv
