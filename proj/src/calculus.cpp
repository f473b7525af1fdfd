#include "gbv/calculus.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gbv {

namespace {

const double kPi = std::numbers::pi;

std::string at(cplx z) {
    std::ostringstream os;
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

double fd_step(cplx z, double rel, double floor_step) {
    return std::max(rel * std::abs(z), floor_step);
}

double checked(double x, cplx z, const char* what) {
    if (!std::isfinite(x)) throw numeric_error(std::string(what) + " is non-finite at " + at(z));
    return x;
}

// Minimum distance from z to the singular points of m living in `chart`.
double singular_distance(const ConformalMetric& m, int chart, cplx z) {
    double d = std::numeric_limits<double>::infinity();
    for (const SingularPoint& p : m.divisor.points()) {
        if (m.surface.model() == SurfaceModel::Torus) {
            d = std::min(d, std::abs(lattice_reduce_centered(z - p.location.coord, m.surface.tau())));
        } else if (p.location.chart == chart) {
            d = std::min(d, std::abs(z - p.location.coord));
        }
    }
    return d;
}

} // namespace

WirtingerPair wirtinger(const ScalarField& f, cplx z, const DerivativePolicy& policy) {
    policy.validate();
    if (f.has_dz()) {
        cplx dz = f.dz(z);
        if (!std::isfinite(dz.real()) || !std::isfinite(dz.imag()))
            throw numeric_error("non-finite derivative at " + at(z));
        return {dz, std::conj(dz)};
    }
    double h = fd_step(z, policy.relative_step, policy.min_step);
    double fxp = checked(f.value(z + h), z + h, "field sample");
    double fxm = checked(f.value(z - h), z - h, "field sample");
    double fyp = checked(f.value(z + cplx{0.0, h}), z, "field sample");
    double fym = checked(f.value(z - cplx{0.0, h}), z, "field sample");
    double dx = (fxp - fxm) / (2.0 * h);
    double dy = (fyp - fym) / (2.0 * h);
    return {0.5 * cplx{dx, -dy}, 0.5 * cplx{dx, dy}};
}

double wirtinger_mixed(const ScalarField& f, cplx z, const DerivativePolicy& policy) {
    policy.validate();
    if (f.has_dzdzbar()) return checked(f.dzdzbar(z), z, "second derivative");
    // 9-point Laplacian: [4 (edges) + corners - 20 f0] / (6 h^2), then /4.
    double h = fd_step(z, policy.second_relative_step, policy.min_step);
    double f0 = checked(f.value(z), z, "field sample");
    double edges = 0.0, corners = 0.0;
    const cplx dirs[4] = {{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}};
    const cplx diag[4] = {{h, h}, {h, -h}, {-h, h}, {-h, -h}};
    for (cplx d : dirs) edges += checked(f.value(z + d), z + d, "field sample");
    for (cplx d : diag) corners += checked(f.value(z + d), z + d, "field sample");
    return (4.0 * edges + corners - 20.0 * f0) / (6.0 * h * h) / 4.0;
}

double gaussian_curvature(const ConformalMetric& m, const SurfacePoint& p,
                          const DerivativePolicy& policy) {
    const ScalarField& v = m.log_factor.at(p.chart);
    if (!v.has_dzdzbar()) {
        double h = fd_step(p.coord, policy.second_relative_step, policy.min_step);
        if (singular_distance(m, p.chart, p.coord) < 2.5 * h)
            throw numeric_error("finite-difference stencil collides with a singular point near "
                                + at(p.coord));
    }
    double lv = checked(v.value(p.coord), p.coord, "log-factor");
    double mixed = wirtinger_mixed(v, p.coord, policy);
    return checked(-4.0 * std::exp(-2.0 * lv) * mixed, p.coord, "curvature");
}

double liouville_residual(const ConformalMetric& m, std::size_t index, cplx point,
                          const DerivativePolicy& policy) {
    const SingularPoint& s = m.divisor.points().at(index);
    if (s.kind != SingularKind::Cone) throw validation_error("expected a cone point");
    cplx a = s.location.coord;
    double r = std::abs(point - a);
    if (!(r > 0.0) || r > m.regular.at(index).radius)
        throw validation_error("point is outside the decomposition annulus of this cone");
    const ScalarField& u = m.regular[index].u;
    double k = gaussian_curvature(m, {s.location.chart, point}, policy);
    double uu = u.value(point);
    double mixed = wirtinger_mixed(u, point, policy);
    return 4.0 * mixed + k * std::pow(r, 2.0 * s.order) * std::exp(2.0 * uu);
}

double cusp_source_residual(const ConformalMetric& m, std::size_t index, cplx point,
                            const DerivativePolicy& policy) {
    const SingularPoint& s = m.divisor.points().at(index);
    if (s.kind != SingularKind::Cusp) throw validation_error("expected a cusp point");
    cplx a = s.location.coord;
    double r = std::abs(point - a);
    if (!(r > 0.0 && r < 1.0))
        throw validation_error("cusp source identity needs 0 < |z - a| < 1");
    if (r > m.regular.at(index).radius)
        throw validation_error("point is outside the decomposition annulus of this cusp");
    const ScalarField& u = m.regular[index].u;
    double k = gaussian_curvature(m, {s.location.chart, point}, policy);
    double uu = u.value(point);
    double mixed = wirtinger_mixed(u, point, policy);
    double logr = std::log(r);
    return 4.0 * mixed - (-k * std::exp(2.0 * uu) - 1.0) / (r * r * logr * logr);
}

namespace {

template <class Sample>
double circle_sum(cplx center, double eps, int N, Sample&& sample) {
    if (N < 16) throw validation_error("circle quadrature needs at least 16 angular samples");
    if (!(eps > 0.0)) throw validation_error("circle radius must be positive");
    double acc = 0.0;
    for (int k = 0; k < N; ++k) {
        double theta = 2.0 * kPi * (k + 0.5) / N;
        cplx dir{std::cos(theta), std::sin(theta)};
        acc += sample(center + eps * dir, dir);
    }
    return acc * (2.0 * kPi / N);
}

} // namespace

double hodge_star_flux(const ScalarField& v, cplx center, double eps, int N,
                       const DerivativePolicy& policy) {
    return circle_sum(center, eps, N, [&](cplx z, cplx dir) {
        cplx dz = wirtinger(v, z, policy).dz;
        return 2.0 * (dir * dz).real() * eps; // d_r v * eps
    });
}

double abs_dz_flux(const ScalarField& u, cplx center, double eps, int N,
                   const DerivativePolicy& policy) {
    return eps * circle_sum(center, eps, N, [&](cplx z, cplx) {
        return std::abs(wirtinger(u, z, policy).dz) * eps;
    });
}

double abs_dzbar_flux(const ScalarField& u, cplx center, double eps, int N,
                      const DerivativePolicy& policy) {
    return eps * circle_sum(center, eps, N, [&](cplx z, cplx) {
        return std::abs(wirtinger(u, z, policy).dzbar) * eps;
    });
}

} // namespace gbv
