#include "gbv/verify.hpp"

#include <cmath>
#include <numbers>

namespace gbv {

namespace {

const double kTwoPi = 2.0 * std::numbers::pi;

ScalarField subtract_fields(const ScalarField& a, const ScalarField& b) {
    ScalarField f;
    f.value = [av = a.value, bv = b.value](cplx z) { return av(z) - bv(z); };
    if (a.has_dz() && b.has_dz())
        f.dz = [ad = a.dz, bd = b.dz](cplx z) { return ad(z) - bd(z); };
    if (a.has_dzdzbar() && b.has_dzdzbar())
        f.dzdzbar = [am = a.dzdzbar, bm = b.dzdzbar](cplx z) { return am(z) - bm(z); };
    return f;
}

// Decay rate fitted from the trailing ratios of a positive ladder.
double fit_decay_exponent(const std::vector<DecayRow>& rows, bool dzbar) {
    double acc = 0.0;
    int used = 0;
    for (std::size_t k = rows.size() >= 4 ? rows.size() - 3 : 1; k < rows.size(); ++k) {
        double a = dzbar ? rows[k - 1].dzbar_value : rows[k - 1].dz_value;
        double b = dzbar ? rows[k].dzbar_value : rows[k].dz_value;
        if (!(a > 1e-300 && b > 1e-300)) continue;
        acc += std::log(a / b) / std::log(rows[k - 1].epsilon / rows[k].epsilon);
        ++used;
    }
    return used ? acc / used : 0.0;
}

} // namespace

FluxDecomposition flux_decomposition(const ConformalMetric& m, std::size_t index, double eps,
                                     int n_angular) {
    const SingularPoint& p = m.divisor.points().at(index);
    if (p.kind == SingularKind::Cusp)
        throw validation_error("point is a cusp: use cusp_flux for its decomposition");
    if (!(eps > 0.0 && eps < m.regular.at(index).radius))
        throw validation_error("flux radius must stay below the decomposition radius");
    const ScalarField& v = m.log_factor.at(p.location.chart);
    const ScalarField& u = m.regular[index].u;
    FluxDecomposition out;
    out.beta_term = p.order;
    out.v_flux_over_2pi = hodge_star_flux(v, p.location.coord, eps, n_angular) / kTwoPi;
    out.residual_flux = hodge_star_flux(u, p.location.coord, eps, n_angular) / kTwoPi;
    out.identity_gap = std::abs(out.v_flux_over_2pi - out.beta_term - out.residual_flux);
    return out;
}

CuspFluxDecomposition cusp_flux(const ConformalMetric& m, std::size_t index, double eps,
                                int n_angular) {
    const SingularPoint& p = m.divisor.points().at(index);
    if (p.kind != SingularKind::Cusp) throw validation_error("expected a cusp point");
    if (!(eps > 0.0 && eps < 1.0))
        throw validation_error("cusp flux radius must lie in (0, 1)");
    if (!(eps < m.regular.at(index).radius))
        throw validation_error("flux radius must stay below the decomposition radius");
    const ScalarField& v = m.log_factor.at(p.location.chart);
    const ScalarField& u = m.regular[index].u;
    CuspFluxDecomposition out;
    out.leading = -1.0;
    out.log_correction = -1.0 / std::log(eps);
    out.v_flux_over_2pi = hodge_star_flux(v, p.location.coord, eps, n_angular) / kTwoPi;
    out.residual_flux = hodge_star_flux(u, p.location.coord, eps, n_angular) / kTwoPi;
    out.identity_gap =
        std::abs(out.v_flux_over_2pi - (out.leading + out.log_correction + out.residual_flux));
    return out;
}

DecayScan regular_part_decay(const ConformalMetric& m, std::size_t index,
                             const GradedScheme& scheme) {
    scheme.validate();
    const SingularPoint& p = m.divisor.points().at(index);
    const RegularPart& reg = m.regular.at(index);
    DecayScan out;
    for (double eps : scheme.excision_ladder) {
        if (!(eps < reg.radius)) continue;
        out.ladder.push_back({eps,
                              abs_dz_flux(reg.u, p.location.coord, eps, scheme.angular_count),
                              abs_dzbar_flux(reg.u, p.location.coord, eps, scheme.angular_count)});
    }
    if (out.ladder.empty())
        throw validation_error("no ladder radius fits below the decomposition radius of "
                               + p.label(index));
    out.exponent_dz = fit_decay_exponent(out.ladder, false);
    out.exponent_dzbar = fit_decay_exponent(out.ladder, true);

    const std::size_t n = out.ladder.size();
    auto ok = [&](auto get) {
        double first = get(out.ladder.front());
        double last = get(out.ladder.back());
        bool small = last <= 1e-3 * (first + 1e-12);
        bool monotone = true;
        for (std::size_t k = n >= 3 ? n - 2 : 1; k < n; ++k)
            if (get(out.ladder[k]) > get(out.ladder[k - 1])) monotone = false;
        return small && monotone;
    };
    out.pass = ok([](const DecayRow& r) { return r.dz_value; })
               && ok([](const DecayRow& r) { return r.dzbar_value; });
    return out;
}

double greens_identity_check(const ConformalMetric& m, const ConformalMetric& background,
                             double eps, const GradedScheme& scheme) {
    scheme.validate();
    if (!background.divisor.empty())
        throw validation_error("background metric must be smooth (empty divisor)");
    if (background.surface.model() != m.surface.model())
        throw validation_error("background must live on the same surface");
    Integrand f = [&](int chart, cplx z) {
        SurfacePoint pt{chart, z};
        double k = gaussian_curvature(m, pt);
        double k1 = gaussian_curvature(background, pt);
        return k * m.density(chart, z) - k1 * background.density(chart, z);
    };
    double lhs = integrate_excised_flat(m, f, scheme, eps) / kTwoPi;
    double rhs = 0.0;
    for (std::size_t i = 0; i < m.divisor.size(); ++i) {
        const SingularPoint& p = m.divisor.points()[i];
        ScalarField v_rel = subtract_fields(m.log_factor.at(p.location.chart),
                                            background.log_factor.at(p.location.chart));
        rhs += hodge_star_flux(v_rel, p.location.coord, eps, scheme.angular_count) / kTwoPi;
    }
    return std::abs(lhs - rhs);
}

double greens_identity_check(const ConformalMetric& m, double eps, const GradedScheme& scheme) {
    ConformalMetric bg = (m.surface.model() == SurfaceModel::Torus)
                             ? flat_torus_metric(m.surface.tau())
                             : round_sphere_metric();
    return greens_identity_check(m, bg, eps, scheme);
}

std::vector<FluxRecord> flux_ladders(const ConformalMetric& m, const GradedScheme& scheme) {
    scheme.validate();
    std::vector<FluxRecord> out;
    for (std::size_t i = 0; i < m.divisor.size(); ++i) {
        const SingularPoint& p = m.divisor.points()[i];
        FluxRecord rec;
        rec.point = p.label(i);
        rec.kind = p.kind;
        rec.order = p.kind == SingularKind::Cusp ? -1.0 : p.order;
        const ScalarField& v = m.log_factor.at(p.location.chart);
        const ScalarField& u = m.regular.at(i).u;
        for (double eps : scheme.excision_ladder) {
            if (!(eps < m.regular[i].radius)) continue;
            FluxLadderRow row;
            row.epsilon = eps;
            row.flux_v_over_2pi =
                hodge_star_flux(v, p.location.coord, eps, scheme.angular_count) / kTwoPi;
            row.flux_u_over_2pi =
                hodge_star_flux(u, p.location.coord, eps, scheme.angular_count) / kTwoPi;
            row.abs_du_flux = abs_dz_flux(u, p.location.coord, eps, scheme.angular_count);
            rec.ladder.push_back(row);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

VerificationReport verify_gauss_bonnet(const ConformalMetric& m, const GradedScheme& scheme,
                                       double tolerance) {
    scheme.validate();
    if (!m.surface.compact())
        throw validation_error("global verification requires a compact surface");
    VerificationReport report;
    report.tolerance = tolerance;
    report.chi = euler_characteristic(m.surface, m.divisor);

    TotalCurvatureResult tc = total_curvature(m, scheme);
    report.total_curvature_over_2pi = tc.value / kTwoPi;
    report.residual = report.total_curvature_over_2pi - report.chi;
    report.ladder_diagnostics.total_ladder = tc.ladder;
    report.ladder_diagnostics.extrapolation = tc.extrapolation;
    report.per_singularity = flux_ladders(m, scheme);
    for (const FluxRecord& rec : report.per_singularity) {
        double acc = 0.0;
        int used = 0;
        for (std::size_t k = rec.ladder.size() >= 4 ? rec.ladder.size() - 3 : 1;
             k < rec.ladder.size(); ++k) {
            double a = rec.ladder[k - 1].abs_du_flux, b = rec.ladder[k].abs_du_flux;
            if (!(a > 1e-300 && b > 1e-300)) continue;
            acc += std::log(a / b) / std::log(rec.ladder[k - 1].epsilon / rec.ladder[k].epsilon);
            ++used;
        }
        report.ladder_diagnostics.decay_exponents.emplace_back(rec.point,
                                                               used ? acc / used : 0.0);
    }

    report.hypothesis_checks.l1_curvature = curvature_lp_norm(m, 1.0, scheme).verdict;
    for (std::size_t i = 0; i < m.divisor.size(); ++i) {
        DirichletEnergyResult e = dirichlet_energy(m, i, m.regular[i].radius, scheme);
        report.hypothesis_checks.dirichlet_energy.emplace_back(m.divisor.points()[i].label(i),
                                                               e.verdict);
    }

    report.pass = std::abs(report.residual) <= tolerance;
    return report;
}

RiemannHurwitzResult riemann_hurwitz_check(const ConformalMetric& m, int n,
                                           const GradedScheme& scheme) {
    RiemannHurwitzResult out;
    out.degree = n;
    out.chi_base = euler_characteristic(m.surface, m.divisor);
    ConformalMetric pulled = power_cover_pullback(m, n);
    out.chi_pullback = euler_characteristic(pulled.surface, pulled.divisor);
    out.chi_relation_residual = out.chi_pullback - double(n) * out.chi_base;
    TotalCurvatureResult tc = total_curvature(pulled, scheme);
    out.total_pullback_over_2pi = tc.value / kTwoPi;
    out.gb_residual = out.total_pullback_over_2pi - out.chi_pullback;
    return out;
}

} // namespace gbv
