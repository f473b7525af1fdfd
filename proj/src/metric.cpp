#include "gbv/metric.hpp"

#include <cmath>
#include <sstream>

namespace gbv {

namespace {

std::string format_point(int chart, cplx z) {
    std::ostringstream os;
    os << "chart " << chart << ", z = " << z.real() << (z.imag() < 0 ? " - " : " + ")
       << std::abs(z.imag()) << "i";
    return os.str();
}

// v(r) = log(2(1+b)) + b log r - log(1 + r^{2+2b}); the football profile is
// the same in both sphere charts.
std::function<Profile3(double)> football_profile(double b) {
    return [b](double r) -> Profile3 {
        double e = 2.0 + 2.0 * b;
        double p = std::pow(r, e);
        double q = 1.0 + p;
        double dp = e * std::pow(r, e - 1.0);
        double ddp = e * (e - 1.0) * std::pow(r, e - 2.0);
        Profile3 out;
        out.v = std::log(2.0 * (1.0 + b)) + (b == 0.0 ? 0.0 : b * std::log(r)) - std::log(q);
        out.d1 = (b == 0.0 ? 0.0 : b / r) - dp / q;
        out.d2 = (b == 0.0 ? 0.0 : -b / (r * r)) - (ddp * q - dp * dp) / (q * q);
        return out;
    };
}

// Regular part of the football at either chart center: log(2(1+b)) - log(1 + r^{2+2b}).
std::function<Profile3(double)> football_regular_profile(double b) {
    return [b](double r) -> Profile3 {
        double e = 2.0 + 2.0 * b;
        double p = std::pow(r, e);
        double q = 1.0 + p;
        double dp = e * std::pow(r, e - 1.0);
        double ddp = e * (e - 1.0) * std::pow(r, e - 2.0);
        Profile3 out;
        out.v = std::log(2.0 * (1.0 + b)) - std::log(q);
        out.d1 = -dp / q;
        out.d2 = -(ddp * q - dp * dp) / (q * q);
        return out;
    };
}

Profile3 cusp_profile_at(double r) {
    double L = std::log(r); // negative for r < 1
    Profile3 out;
    out.v = -L - std::log(-L);
    out.d1 = -1.0 / r - 1.0 / (r * L);
    out.d2 = 1.0 / (r * r) + (L + 1.0) / (r * r * L * L);
    return out;
}

ConformalMetric sphere_metric_from_profiles(std::function<Profile3(double)> vz,
                                            std::function<Profile3(double)> vw,
                                            Divisor divisor,
                                            std::vector<RegularPart> regular) {
    ConformalMetric m;
    m.surface = Surface::sphere();
    m.divisor = std::move(divisor);
    m.log_factor = {radial_field(0.0, std::move(vz)), radial_field(0.0, std::move(vw))};
    m.regular = std::move(regular);
    return m;
}

} // namespace

double evaluate_density(const ConformalMetric& m, const SurfacePoint& p) {
    for (std::size_t i = 0; i < m.divisor.size(); ++i) {
        const SingularPoint& s = m.divisor.points()[i];
        if (s.location.chart == p.chart && s.location.coord == p.coord)
            throw validation_error("density is undefined at singular point " + s.label(i));
    }
    double d = m.density(p.chart, p.coord);
    if (!std::isfinite(d))
        throw numeric_error("non-finite density at " + format_point(p.chart, p.coord));
    return d;
}

ConformalMetric football_metric(double beta) {
    if (!(beta > -1.0)) throw validation_error("football cone order must be > -1");
    Surface s = Surface::sphere();
    Divisor div(s, {Divisor::cone({0, 0.0}, beta), Divisor::cone({1, 0.0}, beta)});
    std::vector<RegularPart> reg;
    reg.push_back({radial_field(0.0, football_regular_profile(beta)), 0.5});
    reg.push_back({radial_field(0.0, football_regular_profile(beta)), 0.5});
    return sphere_metric_from_profiles(football_profile(beta), football_profile(beta),
                                       std::move(div), std::move(reg));
}

ConformalMetric round_sphere_metric() {
    Surface s = Surface::sphere();
    return sphere_metric_from_profiles(football_profile(0.0), football_profile(0.0),
                                       Divisor(s, {}), {});
}

ConformalMetric flat_torus_metric(cplx tau) {
    ConformalMetric m;
    m.surface = Surface::torus(tau);
    m.divisor = Divisor(m.surface, {});
    m.log_factor = {constant_field(0.0)};
    return m;
}

ConformalMetric flat_cone_metric(double beta, double radius) {
    if (!(beta > -1.0)) throw validation_error("cone order must be > -1");
    ConformalMetric m;
    m.surface = Surface::disk_patch(radius);
    m.divisor = Divisor(m.surface, {Divisor::cone({0, 0.0}, beta)});
    // log|z| is harmonic: the mixed derivative is exactly zero, not a
    // cancellation of 1/r^2 terms.
    ScalarField v;
    v.value = [beta](cplx z) { return beta * std::log(std::abs(z)); };
    v.dz = [beta](cplx z) { return beta / (2.0 * z); };
    v.dzdzbar = [](cplx) { return 0.0; };
    m.log_factor = {std::move(v)};
    // u = 0 is exact on the whole patch.
    m.regular = {{constant_field(0.0), radius}};
    return m;
}

ConformalMetric cusp_model_metric(double radius) {
    if (!(radius > 0.0 && radius < 1.0))
        throw validation_error("cusp model radius must lie in (0, 1)");
    ConformalMetric m;
    m.surface = Surface::disk_patch(radius);
    m.divisor = Divisor(m.surface, {Divisor::cusp({0, 0.0})});
    m.log_factor = {radial_field(0.0, cusp_profile_at)};
    m.regular = {{constant_field(0.0), radius}};
    return m;
}

ConformalMetric cusp_sphere_metric(double beta) {
    if (!(beta > -1.0)) throw validation_error("cone order must be > -1");
    // Built in the w-chart: exactly the cusp model for |w| <= 1/4, exactly
    // -(beta+2) log|w| for |w| >= 0.6, C^inf radial blend in between. The
    // z-chart then carries v = beta log|z| on its whole integration region,
    // so the cone side is a pure flat cone there.
    const double rho1 = 0.25, rho2 = 0.6;
    auto vw = [beta, rho1, rho2](double p) -> Profile3 {
        if (p <= rho1) return cusp_profile_at(p);
        Profile3 smooth{-(beta + 2.0) * std::log(p), -(beta + 2.0) / p, (beta + 2.0) / (p * p)};
        if (p >= rho2) return smooth;
        Profile3 step = smoothstep_cinf((p - rho1) / (rho2 - rho1));
        step.d1 /= (rho2 - rho1);
        step.d2 /= (rho2 - rho1) * (rho2 - rho1);
        Profile3 cusp = cusp_profile_at(p);
        Profile3 out;
        out.v = (1.0 - step.v) * cusp.v + step.v * smooth.v;
        out.d1 = (1.0 - step.v) * cusp.d1 + step.v * smooth.d1 + step.d1 * (smooth.v - cusp.v);
        out.d2 = (1.0 - step.v) * cusp.d2 + step.v * smooth.d2
                 + 2.0 * step.d1 * (smooth.d1 - cusp.d1) + step.d2 * (smooth.v - cusp.v);
        return out;
    };
    // z-chart profile from the chart rule v_z(r) = v_w(1/r) - 2 log r.
    auto vz = [vw](double r) -> Profile3 {
        Profile3 inner = vw(1.0 / r);
        Profile3 out;
        out.v = inner.v - 2.0 * std::log(r);
        out.d1 = -inner.d1 / (r * r) - 2.0 / r;
        out.d2 = inner.d2 / (r * r * r * r) + 2.0 * inner.d1 / (r * r * r) + 2.0 / (r * r);
        return out;
    };
    // Regular part at the cusp: u(w) = v_w + log|w| + log(-log|w|), identically
    // zero inside the decomposition radius rho1.
    auto uw = [vw, rho1](double p) -> Profile3 {
        if (p <= rho1) return {0.0, 0.0, 0.0};
        Profile3 v = vw(p);
        Profile3 c = cusp_profile_at(p);
        return {v.v - c.v, v.d1 - c.d1, v.d2 - c.d2};
    };
    Surface s = Surface::sphere();
    Divisor div(s, {Divisor::cone({0, 0.0}, beta), Divisor::cusp({1, 0.0})});
    std::vector<RegularPart> reg;
    reg.push_back({constant_field(0.0), 0.5}); // v = beta log r exactly for r <= 1
    reg.push_back({radial_field(0.0, uw), rho1});
    return sphere_metric_from_profiles(vz, vw, std::move(div), std::move(reg));
}

ConformalMetric perturb(const ConformalMetric& m, const Bump& bump) {
    if (bump.chart < 0 || bump.chart >= int(m.log_factor.size()))
        throw validation_error("bump chart id out of range");
    if (!(bump.width > 0.0)) throw validation_error("bump width must be positive");

    const Surface& s = m.surface;
    if (s.model() != SurfaceModel::Torus) {
        double seam = s.distance_to_chart_boundary({bump.chart, bump.center});
        if (!(bump.width < seam))
            throw validation_error("bump support crosses the chart boundary");
    }
    // The support may overlap a decomposition annulus (the bump then joins the
    // regular part there) but must not reach the singular point itself.
    for (std::size_t i = 0; i < m.divisor.size(); ++i) {
        const SingularPoint& p = m.divisor.points()[i];
        double dist;
        if (s.model() == SurfaceModel::Torus) {
            dist = std::abs(lattice_reduce_centered(bump.center - p.location.coord, s.tau()));
        } else if (p.location.chart == bump.chart) {
            dist = std::abs(bump.center - p.location.coord);
        } else {
            // Sphere, opposite chart: a support inside this chart's open unit
            // disk cannot reach the other chart's center.
            continue;
        }
        if (!(dist > bump.width))
            throw validation_error("bump support touches singular point " + p.label(i));
    }

    ScalarField b = (s.model() == SurfaceModel::Torus)
                        ? periodic_bump_field(bump.center, bump.amplitude, bump.width, s.tau())
                        : bump_field(bump.center, bump.amplitude, bump.width);

    ConformalMetric out = m;
    out.log_factor[bump.chart] = add_fields(m.log_factor[bump.chart], b);
    if (s.model() == SurfaceModel::Sphere) {
        // Transport to the other chart: b_other(w) = b(1/w); the |dw| Jacobian
        // already lives in the base log-factor.
        int other = 1 - bump.chart;
        ScalarField bo;
        bo.value = [b](cplx w) { return w == cplx{0.0, 0.0} ? 0.0 : b.value(1.0 / w); };
        bo.dz = [b](cplx w) {
            if (w == cplx{0.0, 0.0}) return cplx{0.0, 0.0};
            return b.dz(1.0 / w) * (-1.0 / (w * w));
        };
        bo.dzdzbar = [b](cplx w) {
            if (w == cplx{0.0, 0.0}) return 0.0;
            return b.dzdzbar(1.0 / w) / std::norm(w * w);
        };
        out.log_factor[other] = add_fields(m.log_factor[other], bo);
    }
    // Keep v = (singular model) + u exact: the bump joins every regular part
    // whose decomposition disk its support can meet.
    for (std::size_t i = 0; i < out.regular.size(); ++i) {
        const SingularPoint& p = m.divisor.points()[i];
        if (s.model() != SurfaceModel::Torus && p.location.chart != bump.chart) continue;
        double dist = s.model() == SurfaceModel::Torus
                          ? std::abs(lattice_reduce_centered(bump.center - p.location.coord, s.tau()))
                          : std::abs(bump.center - p.location.coord);
        if (dist - bump.width < out.regular[i].radius)
            out.regular[i].u = add_fields(m.regular[i].u, b);
    }
    return out;
}

ConformalMetric branched_cover_pullback(const ConformalMetric& m, int cover_m) {
    if (cover_m < 0) throw validation_error("covering parameter must be >= 0");
    if (m.surface.model() != SurfaceModel::DiskPatch)
        throw validation_error("branched cover pullback expects a disk patch metric");
    if (m.divisor.size() != 1 || m.divisor.points()[0].location.coord != cplx{0.0, 0.0}
        || m.divisor.points()[0].kind != SingularKind::Cone)
        throw validation_error("branched cover pullback expects a single cone at the patch center");
    if (cover_m == 0) return m;

    int k = cover_m + 1; // z = w^k
    double beta = m.divisor.points()[0].order;
    double beta_new = cover_m + k * beta;
    double radius_new = std::pow(m.surface.patch_radius(), 1.0 / k);

    auto lift = [k](const ScalarField& f, double extra_log, double log_deriv_coeff) {
        // g(w) = f(w^k) + extra_log + log_deriv_coeff * log|w|
        ScalarField g;
        g.value = [f, k, extra_log, log_deriv_coeff](cplx w) {
            return f.value(std::pow(w, k)) + extra_log + log_deriv_coeff * std::log(std::abs(w));
        };
        if (f.has_dz())
            g.dz = [f, k, log_deriv_coeff](cplx w) {
                cplx z = std::pow(w, k);
                return f.dz(z) * double(k) * std::pow(w, k - 1) + log_deriv_coeff / (2.0 * w);
            };
        if (f.has_dzdzbar())
            g.dzdzbar = [f, k](cplx w) {
                cplx z = std::pow(w, k);
                return f.dzdzbar(z) * double(k * k) * std::pow(std::norm(w), k - 1);
            };
        return g;
    };

    ConformalMetric out;
    out.surface = Surface::disk_patch(radius_new);
    out.divisor = Divisor(out.surface, {Divisor::cone({0, 0.0}, beta_new)});
    // v'(w) = v(w^k) + log k + m log|w|
    out.log_factor = {lift(m.log_factor[0], std::log(double(k)), double(cover_m))};
    double reg_radius = std::min(std::pow(m.regular[0].radius, 1.0 / k), radius_new);
    out.regular = {{lift(m.regular[0].u, std::log(double(k)), 0.0), reg_radius}};
    return out;
}

ConformalMetric power_cover_pullback(const ConformalMetric& m, int n) {
    if (n < 1) throw validation_error("cover degree must be >= 1");
    if (m.surface.model() != SurfaceModel::Sphere)
        throw validation_error("power cover pullback expects a sphere metric");
    for (const SingularPoint& p : m.divisor.points())
        if (p.location.coord != cplx{0.0, 0.0})
            throw validation_error(
                "unsupported divisor for z -> z^n pullback: support must lie in {0, infinity}");
    if (n == 1) return m;

    double beta0 = 0.0, beta_inf = 0.0;
    bool cusp0 = false, cusp_inf = false;
    const RegularPart* reg0 = nullptr;
    const RegularPart* reg_inf = nullptr;
    for (std::size_t i = 0; i < m.divisor.size(); ++i) {
        const SingularPoint& p = m.divisor.points()[i];
        if (p.kind == SingularKind::Cusp) {
            (p.location.chart == 0 ? cusp0 : cusp_inf) = true;
            continue;
        }
        if (p.location.chart == 0) { beta0 = p.order; reg0 = &m.regular[i]; }
        else { beta_inf = p.order; reg_inf = &m.regular[i]; }
    }
    if (cusp0 || cusp_inf)
        throw validation_error("power cover pullback supports cone points only");

    auto lift_chart = [n](const ScalarField& f, double extra_log, double log_coeff) {
        ScalarField g;
        g.value = [f, n, extra_log, log_coeff](cplx w) {
            return f.value(std::pow(w, n)) + extra_log + log_coeff * std::log(std::abs(w));
        };
        if (f.has_dz())
            g.dz = [f, n, log_coeff](cplx w) {
                return f.dz(std::pow(w, n)) * double(n) * std::pow(w, n - 1) + log_coeff / (2.0 * w);
            };
        if (f.has_dzdzbar())
            g.dzdzbar = [f, n](cplx w) {
                return f.dzdzbar(std::pow(w, n)) * double(n * n) * std::pow(std::norm(w), n - 1);
            };
        return g;
    };

    // Both chart formulas take the same shape: the w-chart of the cover maps to
    // the w-chart of the base under w -> w^n.
    ConformalMetric out;
    out.surface = Surface::sphere();
    double b0 = double(n - 1) + n * beta0;
    double bi = double(n - 1) + n * beta_inf;
    std::vector<SingularPoint> pts;
    std::vector<RegularPart> regs;
    auto reg_for = [&](const RegularPart* base) {
        ScalarField u_base = base ? base->u : constant_field(0.0);
        double base_radius = base ? base->radius : 0.5;
        ScalarField u = lift_chart(u_base, std::log(double(n)), 0.0);
        double radius = std::min(std::pow(base_radius, 1.0 / n), 0.5);
        return RegularPart{u, radius};
    };
    if (b0 != 0.0 || beta0 != 0.0) {
        pts.push_back(Divisor::cone({0, 0.0}, b0));
        regs.push_back(reg_for(reg0));
    }
    if (bi != 0.0 || beta_inf != 0.0) {
        pts.push_back(Divisor::cone({1, 0.0}, bi));
        regs.push_back(reg_for(reg_inf));
    }
    out.divisor = Divisor(out.surface, std::move(pts));
    out.regular = std::move(regs);
    out.log_factor = {lift_chart(m.log_factor[0], std::log(double(n)), double(n - 1)),
                      lift_chart(m.log_factor[1], std::log(double(n)), double(n - 1))};
    return out;
}

} // namespace gbv
