#pragma once

#include "gbv/metric.hpp"

namespace gbv {

/// Finite-difference step policy. First derivatives use central differences
/// with step h = max(relative_step * |z|, min_step); second mixed derivatives
/// use a 9-point composite stencil with the wider, cancellation-balanced step
/// max(second_relative_step * |z|, min_step).
struct DerivativePolicy {
    double relative_step = 1e-5;
    double second_relative_step = 3e-4;
    double min_step = 1e-9;

    void validate() const {
        if (!(relative_step > 0.0 && relative_step <= 1e-2))
            throw validation_error("derivative relative step must lie in (0, 1e-2]");
        if (!(min_step > 0.0)) throw validation_error("derivative step floor must be positive");
    }
};

struct WirtingerPair {
    cplx dz;
    cplx dzbar;
};

/// First Wirtinger derivatives (1/2(d_x - i d_y), 1/2(d_x + i d_y)) of a real
/// field, from the analytic handle when present, else central differences.
WirtingerPair wirtinger(const ScalarField& f, cplx z, const DerivativePolicy& policy = {});

/// Second mixed derivative d^2 f / dz dzbar = Laplacian/4, analytic handle or
/// 9-point composite stencil.
double wirtinger_mixed(const ScalarField& f, cplx z, const DerivativePolicy& policy = {});

/// Gaussian curvature K = -4 e^{-2v} d^2v/dz dzbar at a non-singular point.
/// Finite-difference fallback refuses stencils that collide with a singular point.
double gaussian_curvature(const ConformalMetric& m, const SurfacePoint& p,
                          const DerivativePolicy& policy = {});

/// Residual of the cone-point field equation at a point near cone i:
/// 4 d^2u/dzdzbar + K |z-a|^{2 beta} e^{2u}; identically zero for a consistent metric.
double liouville_residual(const ConformalMetric& m, std::size_t index, cplx point,
                          const DerivativePolicy& policy = {});

/// Residual of the cusp source identity at a point near cusp i:
/// 4 d^2u/dzdzbar - (-K e^{2u} - 1) / (|z-a|^2 log^2|z-a|).
double cusp_source_residual(const ConformalMetric& m, std::size_t index, cplx point,
                            const DerivativePolicy& policy = {});

/// Flux of grad v through the circle |z - center| = eps, counterclockwise:
/// integral of (d_r v) eps dtheta, with d_r v = 2 Re(e^{i theta} dv/dz).
/// Trapezoidal in theta with N >= 16 samples at midpoint angles.
double hodge_star_flux(const ScalarField& v, cplx center, double eps, int N,
                       const DerivativePolicy& policy = {});

/// eps * integral of |du/dz| |dz| over the circle |z - center| = eps.
double abs_dz_flux(const ScalarField& u, cplx center, double eps, int N,
                   const DerivativePolicy& policy = {});

/// Same with |du/dzbar| (equal to the above for real fields, kept separate for
/// the two-sided decay scan).
double abs_dzbar_flux(const ScalarField& u, cplx center, double eps, int N,
                      const DerivativePolicy& policy = {});

} // namespace gbv
