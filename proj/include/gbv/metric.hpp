#pragma once

#include "gbv/surface.hpp"

#include <vector>

namespace gbv {

/// Regular part u_i of the conformal factor near one singular point, expressed
/// in that point's chart:
///   cone:  v = beta log|z - a| + u(z)
///   cusp:  v = -log|z - a| - log(-log|z - a|) + u(z)
/// `radius` is the decomposition radius inside which u is the authoritative
/// representation.
struct RegularPart {
    ScalarField u;
    double radius = 0.5;
};

/// Conformal metric e^{2v} |dz|^2 on a model surface, with explicit singular
/// decomposition data per divisor point. Log-factors are stored per chart and
/// must be chart-consistent (sphere: v_w(w) = v_z(1/w) - 2 log|w|).
struct ConformalMetric {
    Surface surface = Surface::sphere();
    Divisor divisor;
    std::vector<ScalarField> log_factor; ///< one per chart
    std::vector<RegularPart> regular;    ///< parallel to divisor.points()

    double log_density(int chart, cplx z) const { return log_factor.at(chart).value(z); }
    /// e^{2v}.
    double density(int chart, cplx z) const { return std::exp(2.0 * log_density(chart, z)); }
};

/// e^{2v} at a non-singular point. Throws at singular points.
double evaluate_density(const ConformalMetric& m, const SurfacePoint& p);

/// Constant-curvature-1 sphere metric with cone points of order beta at z = 0
/// and at infinity: e^{2v} = 4(1+beta)^2 |z|^{2 beta} / (1 + |z|^{2+2 beta})^2.
ConformalMetric football_metric(double beta);

/// Round sphere, e^{2v} = 4 / (1 + |z|^2)^2, empty divisor.
ConformalMetric round_sphere_metric();

/// Flat torus C / (Z + tau Z), v = 0, empty divisor.
ConformalMetric flat_torus_metric(cplx tau);

/// Flat disk-patch metric v = beta log|z| with a cone of order beta at 0.
ConformalMetric flat_cone_metric(double beta, double radius);

/// Hyperbolic cusp model on the punctured disk {0 < |z| < radius}, radius < 1:
/// v = -log|z| - log(-log|z|), curvature -1, one cusp at 0.
ConformalMetric cusp_model_metric(double radius);

/// Sphere metric with a cone of order beta at z = 0 and a cusp at infinity,
/// glued radially: exactly beta log|z| for |z| <= 2 and exactly the cusp model
/// near w = 0 (|z| >= 4), with a C^inf radial transition in between. Both
/// regular parts vanish identically inside the decomposition radii.
ConformalMetric cusp_sphere_metric(double beta);

/// Compactly supported conformal-factor perturbation.
struct Bump {
    int chart = 0;
    cplx center{0.0, 0.0};
    double amplitude = 0.0;
    double width = 0.1;
};

/// Metric with log-factor v + bump and the same divisor. The bump's support
/// disk must stay inside its chart and clear of every decomposition disk.
ConformalMetric perturb(const ConformalMetric& m, const Bump& bump);

/// Pullback of a single-cone disk-patch metric under z = omega^{m+1}:
/// order becomes beta' = m + (m+1) beta, regular part u'(w) = u(w^{m+1}) + log(m+1).
/// m = 0 is the identity.
ConformalMetric branched_cover_pullback(const ConformalMetric& m, int cover_m);

/// Pullback of a sphere metric with divisor supported in {0, infinity} under
/// z -> z^n. Ramification turns an order-beta point into order (n-1) + n beta.
ConformalMetric power_cover_pullback(const ConformalMetric& m, int n);

} // namespace gbv
