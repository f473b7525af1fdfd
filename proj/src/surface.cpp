#include "gbv/surface.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gbv {

Surface Surface::sphere() {
    Surface s;
    s.model_ = SurfaceModel::Sphere;
    return s;
}

Surface Surface::torus(cplx tau) {
    if (!(tau.imag() > 0.0))
        throw validation_error("torus modulus must have positive imaginary part");
    Surface s;
    s.model_ = SurfaceModel::Torus;
    s.tau_ = tau;
    return s;
}

Surface Surface::disk_patch(double radius) {
    if (!(radius > 0.0)) throw validation_error("disk patch radius must be positive");
    Surface s;
    s.model_ = SurfaceModel::DiskPatch;
    s.radius_ = radius;
    return s;
}

int Surface::genus() const {
    switch (model_) {
        case SurfaceModel::Sphere: return 0;
        case SurfaceModel::Torus: return 1;
        default: throw validation_error("a local disk patch has no genus");
    }
}

int Surface::euler_characteristic_topological() const {
    if (model_ == SurfaceModel::DiskPatch)
        throw validation_error("no global Euler characteristic for local patch");
    return 2 - 2 * genus();
}

bool Surface::contains(const SurfacePoint& p) const {
    switch (model_) {
        case SurfaceModel::Sphere:
            // Points are entered in the chart whose closed unit disk holds them.
            return (p.chart == 0 || p.chart == 1) && std::abs(p.coord) <= 1.0;
        case SurfaceModel::Torus: {
            if (p.chart != 0) return false;
            double t = p.coord.imag() / tau_.imag();
            double s = p.coord.real() - t * tau_.real();
            return s >= 0.0 && s < 1.0 && t >= 0.0 && t < 1.0;
        }
        case SurfaceModel::DiskPatch:
            return p.chart == 0 && std::abs(p.coord) < radius_;
    }
    return false;
}

double Surface::distance_to_chart_boundary(const SurfacePoint& p) const {
    switch (model_) {
        case SurfaceModel::Sphere: return 1.0 - std::abs(p.coord);
        case SurfaceModel::Torus: return std::numeric_limits<double>::infinity();
        case SurfaceModel::DiskPatch: return radius_ - std::abs(p.coord);
    }
    return 0.0;
}

cplx chart_transition(const Surface& s, cplx point, int from_chart, int to_chart) {
    switch (s.model()) {
        case SurfaceModel::Sphere: {
            if (from_chart < 0 || from_chart > 1 || to_chart < 0 || to_chart > 1)
                throw validation_error("sphere has charts 0 (z) and 1 (w) only");
            if (from_chart == to_chart) return point;
            if (point == cplx{0.0, 0.0})
                throw validation_error("chart center has no coordinate in the opposite chart");
            return 1.0 / point;
        }
        case SurfaceModel::Torus: {
            if (from_chart != 0 || to_chart != 0)
                throw validation_error("torus has a single chart 0");
            cplx tau = s.tau();
            double t = point.imag() / tau.imag();
            double u = point.real() - t * tau.real();
            u -= std::floor(u);
            t -= std::floor(t);
            return u + t * tau;
        }
        case SurfaceModel::DiskPatch: {
            if (from_chart != 0 || to_chart != 0)
                throw validation_error("disk patch has a single chart 0");
            return point;
        }
    }
    throw validation_error("unknown surface model");
}

std::string SingularPoint::label(std::size_t index) const {
    std::ostringstream os;
    os << "p" << index;
    return os.str();
}

SingularPoint Divisor::cone(SurfacePoint at, double order) {
    if (!(order > -1.0)) throw validation_error("cone order must be > -1");
    return SingularPoint{at, SingularKind::Cone, order};
}

SingularPoint Divisor::cusp(SurfacePoint at) {
    return SingularPoint{at, SingularKind::Cusp, -1.0};
}

namespace {

// Canonical representative for distinctness checks: sphere points mapped into
// the chart where |coord| <= 1, tagged by chart; others as stored.
SurfacePoint canonical(const Surface& s, const SurfacePoint& p) {
    if (s.model() == SurfaceModel::Sphere && std::abs(p.coord) > 1.0)
        return SurfacePoint{1 - p.chart, 1.0 / p.coord};
    if (s.model() == SurfaceModel::Torus)
        return SurfacePoint{0, chart_transition(s, p.coord, 0, 0)};
    return p;
}

bool same_point(const Surface& s, const SurfacePoint& a, const SurfacePoint& b) {
    SurfacePoint ca = canonical(s, a), cb = canonical(s, b);
    if (ca.chart == cb.chart) return ca.coord == cb.coord;
    if (s.model() != SurfaceModel::Sphere) return false;
    // Cross-chart coincidence on the seam: z and w = 1/z.
    return ca.coord != cplx{0.0, 0.0} && 1.0 / ca.coord == cb.coord;
}

} // namespace

Divisor::Divisor(const Surface& s, std::vector<SingularPoint> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const SingularPoint& p = points_[i];
        if (p.kind == SingularKind::Cone && !(p.order > -1.0))
            throw validation_error("cone order must be > -1");
        if (!s.contains(p.location))
            throw validation_error("divisor point " + p.label(i) + " does not lie on the surface");
        for (std::size_t j = 0; j < i; ++j)
            if (same_point(s, points_[j].location, p.location))
                throw validation_error("divisor points must be pairwise distinct");
    }
}

double Divisor::degree() const {
    double deg = 0.0;
    for (const SingularPoint& p : points_)
        deg += (p.kind == SingularKind::Cusp) ? -1.0 : p.order;
    return deg;
}

double euler_characteristic(const Surface& s, const Divisor& d) {
    return double(s.euler_characteristic_topological()) + d.degree();
}

} // namespace gbv
