#pragma once

#include "gbv/field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gbv {

enum class SurfaceModel { Sphere, Torus, DiskPatch };

/// A point on a surface, given as a chart id plus chart coordinate.
/// Sphere charts: 0 is the z-chart, 1 is the w-chart with w = 1/z.
struct SurfacePoint {
    int chart = 0;
    cplx coord{0.0, 0.0};
};

/// Compact model surfaces (sphere, flat torus) and a local disk patch.
/// Immutable after construction.
class Surface {
public:
    static Surface sphere();
    static Surface torus(cplx tau);
    static Surface disk_patch(double radius);

    SurfaceModel model() const { return model_; }
    bool compact() const { return model_ != SurfaceModel::DiskPatch; }
    int genus() const;
    /// chi(S) = 2 - 2 genus. Throws for DiskPatch.
    int euler_characteristic_topological() const;
    int chart_count() const { return model_ == SurfaceModel::Sphere ? 2 : 1; }

    cplx tau() const { return tau_; }           // Torus only
    double patch_radius() const { return radius_; } // DiskPatch only

    bool contains(const SurfacePoint& p) const;
    /// Chart-coordinate distance from p to the boundary of its chart's natural
    /// domain (unit circle seam for sphere charts, rim for a disk patch).
    /// The torus has no seam; returns +inf.
    double distance_to_chart_boundary(const SurfacePoint& p) const;

private:
    Surface() = default;
    SurfaceModel model_ = SurfaceModel::Sphere;
    cplx tau_{0.0, 1.0};
    double radius_ = 1.0;
};

/// Coordinate of the same surface point in another chart.
/// Sphere: w = 1/z (z = 0 has no w-coordinate). Torus: reduction into the
/// fundamental domain {s + t tau : s,t in [0,1)}.
cplx chart_transition(const Surface& s, cplx point, int from_chart, int to_chart);

enum class SingularKind { Cone, Cusp };

struct SingularPoint {
    SurfacePoint location;
    SingularKind kind = SingularKind::Cone;
    double order = 0.0; ///< cone order beta > -1; a cusp carries order -1 by convention

    std::string label(std::size_t index) const;
};

/// Finite list of singular points. Validated against a surface on construction:
/// cone orders > -1, locations on the surface and pairwise distinct.
class Divisor {
public:
    Divisor() = default;
    Divisor(const Surface& s, std::vector<SingularPoint> points);

    static SingularPoint cone(SurfacePoint at, double order);
    static SingularPoint cusp(SurfacePoint at);

    const std::vector<SingularPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    /// deg = sum of orders; a cusp contributes -1.
    double degree() const;

private:
    std::vector<SingularPoint> points_;
};

/// chi(S, beta) = chi(S) + deg(beta). Rejects DiskPatch.
double euler_characteristic(const Surface& s, const Divisor& d);

} // namespace gbv
