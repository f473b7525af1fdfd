#include "gbv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gbv {

namespace {

const double kPi = std::numbers::pi;

// 4-node Gauss-Legendre on [-1, 1].
const double kGaussNode[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                              0.8611363115940526};
const double kGaussWeight[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                0.3478548451374538};

enum class RadialMap { Plain, LogR, CuspT };

// Appends one ring of Gauss-in-radius x uniform-midpoint-in-angle cells around
// `center` covering [r_in, r_out] in the coordinate given by `map`:
//   Plain:  x = r,            flat weight r dr dtheta
//   LogR:   x = log r,        flat weight e^{2x} dx dtheta
//   CuspT:  x = -1/log r,     flat weight (r^2 / x^2) dx dtheta
void append_radial_cells(std::vector<Cell>& out, int chart, cplx center, double r_in, double r_out,
                         int radial_cells, int n_angular, RadialMap map) {
    if (!(r_out > r_in)) return;
    double x_lo = r_in, x_hi = r_out;
    if (map == RadialMap::LogR) {
        x_lo = std::log(r_in);
        x_hi = std::log(r_out);
    } else if (map == RadialMap::CuspT) {
        x_lo = -1.0 / std::log(r_in);
        x_hi = -1.0 / std::log(r_out);
    }
    double dx = (x_hi - x_lo) / radial_cells;
    double dtheta = 2.0 * kPi / n_angular;
    for (int j = 0; j < radial_cells; ++j) {
        double a = x_lo + j * dx;
        for (int g = 0; g < 4; ++g) {
            double x = a + 0.5 * dx * (1.0 + kGaussNode[g]);
            double r, radial_weight;
            switch (map) {
                case RadialMap::Plain:
                    r = x;
                    radial_weight = r;
                    break;
                case RadialMap::LogR:
                    r = std::exp(x);
                    radial_weight = r * r;
                    break;
                default:
                    r = std::exp(-1.0 / x);
                    radial_weight = r * r / (x * x);
                    break;
            }
            double w = 0.5 * dx * kGaussWeight[g] * radial_weight * dtheta;
            for (int k = 0; k < n_angular; ++k) {
                double theta = dtheta * (k + 0.5);
                out.push_back({chart, center + r * cplx{std::cos(theta), std::sin(theta)}, w});
            }
        }
    }
}

// Index of the singular point sitting at the center of `chart`, if any.
std::optional<std::size_t> center_singularity(const ConformalMetric& m, int chart) {
    for (std::size_t i = 0; i < m.divisor.size(); ++i) {
        const SingularPoint& p = m.divisor.points()[i];
        if (p.location.chart == chart && p.location.coord == cplx{0.0, 0.0}) return i;
    }
    return std::nullopt;
}

void require_centered_divisor(const ConformalMetric& m) {
    for (const SingularPoint& p : m.divisor.points())
        if (p.location.coord != cplx{0.0, 0.0})
            throw validation_error(
                "unsupported configuration: area quadrature requires singular points at chart centers");
    if (m.surface.model() == SurfaceModel::Torus && !m.divisor.empty())
        throw validation_error("unsupported configuration: no singular torus metrics are available");
}

void append_chart_cells(std::vector<Cell>& out, const ConformalMetric& m, int chart,
                        double outer_radius, const GradedScheme& scheme, double eps) {
    double bulk_inner = 0.0;
    if (auto ci = center_singularity(m, chart)) {
        const SingularPoint& p = m.divisor.points()[*ci];
        double r_dec = std::min(m.regular.at(*ci).radius, outer_radius);
        if (!(eps < r_dec))
            throw validation_error("excision radius must stay below the decomposition radius");
        RadialMap map = (p.kind == SingularKind::Cusp) ? RadialMap::CuspT : RadialMap::LogR;
        append_radial_cells(out, chart, 0.0, eps, r_dec, scheme.radial_levels,
                            scheme.angular_count, map);
        bulk_inner = r_dec;
    }
    int bulk_cells = std::max(2, (int)std::ceil((outer_radius - bulk_inner) * scheme.bulk_resolution));
    append_radial_cells(out, chart, 0.0, bulk_inner, outer_radius, bulk_cells, scheme.angular_count,
                        RadialMap::Plain);
}

std::string cell_location(const Cell& c) {
    std::ostringstream os;
    os << "chart " << c.chart << ", z = (" << c.z.real() << ", " << c.z.imag() << ")";
    return os.str();
}

} // namespace

std::vector<double> GradedScheme::default_ladder() {
    std::vector<double> ladder;
    for (int k = 0; k <= 8; ++k) ladder.push_back(0.1 * std::pow(2.0, -k));
    return ladder;
}

void GradedScheme::validate() const {
    if (excision_ladder.empty()) throw validation_error("excision ladder must be nonempty");
    double prev = std::numeric_limits<double>::infinity();
    for (double e : excision_ladder) {
        if (!(e > 0.0 && e < prev))
            throw validation_error("excision ladder must be strictly decreasing and positive");
        prev = e;
    }
    if (radial_levels < 8) throw validation_error("radial_levels must be at least 8");
    if (angular_count < 64) throw validation_error("angular_count must be at least 64");
    if (bulk_resolution < 4) throw validation_error("bulk_resolution must be at least 4");
}

std::vector<Cell> surface_cells(const ConformalMetric& m, const GradedScheme& scheme, double eps,
                                double sphere_split) {
    scheme.validate();
    require_centered_divisor(m);
    if (!(eps > 0.0)) throw validation_error("excision radius must be positive");
    std::vector<Cell> cells;
    switch (m.surface.model()) {
        case SurfaceModel::Sphere: {
            if (!(sphere_split > 0.0)) throw validation_error("sphere split radius must be positive");
            append_chart_cells(cells, m, 0, sphere_split, scheme, eps);
            append_chart_cells(cells, m, 1, 1.0 / sphere_split, scheme, eps);
            break;
        }
        case SurfaceModel::Torus: {
            cplx tau = m.surface.tau();
            int ns = std::max(4, (int)std::lround(scheme.bulk_resolution * 1.0));
            int nt = std::max(4, (int)std::lround(scheme.bulk_resolution * std::abs(tau)));
            double w = tau.imag() / (double(ns) * double(nt));
            for (int i = 0; i < ns; ++i)
                for (int j = 0; j < nt; ++j) {
                    double s = (i + 0.5) / ns, t = (j + 0.5) / nt;
                    cells.push_back({0, s + t * tau, w});
                }
            break;
        }
        case SurfaceModel::DiskPatch:
            append_chart_cells(cells, m, 0, m.surface.patch_radius(), scheme, eps);
            break;
    }
    return cells;
}

std::vector<Cell> annulus_cells(const ConformalMetric& m, std::size_t index, double r_in,
                                double r_out, const GradedScheme& scheme) {
    scheme.validate();
    const SingularPoint& p = m.divisor.points().at(index);
    if (!(r_in > 0.0 && r_out > r_in)) throw validation_error("annulus radii must satisfy 0 < r_in < r_out");
    std::vector<Cell> cells;
    append_radial_cells(cells, p.location.chart, p.location.coord, r_in, r_out,
                        scheme.radial_levels, scheme.angular_count, RadialMap::LogR);
    return cells;
}

double integrate_cells(std::span<const Cell> cells, const Integrand& f) {
    const std::size_t n = cells.size();
    std::vector<double> values(n);
    auto eval = [&](std::size_t i) -> double {
        const Cell& c = cells[i];
        if (c.weight == 0.0) return 0.0;
        double v;
        try {
            v = f(c.chart, c.z);
        } catch (...) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        return v * c.weight;
    };
    if (parallel_execution())
        evaluate_indexed_parallel(n, values.data(), eval);
    else
        evaluate_indexed_serial(n, values.data(), eval);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(values[i])) {
            // Re-run serially to recover the underlying message if it threw.
            try {
                double v = f(cells[i].chart, cells[i].z);
                std::ostringstream os;
                os << "non-finite integrand sample (" << v << ") at " << cell_location(cells[i]);
                throw numeric_error(os.str());
            } catch (const numeric_error&) {
                throw;
            } catch (const std::exception& e) {
                throw numeric_error(std::string("integrand failure at ") + cell_location(cells[i])
                                    + ": " + e.what());
            }
        }
    }
    return pairwise_sum(values);
}

double integrate_over_surface(const ConformalMetric& m, const Integrand& integrand,
                              const GradedScheme& scheme, double eps, double sphere_split) {
    std::vector<Cell> cells = surface_cells(m, scheme, eps, sphere_split);
    return integrate_cells(cells, [&](int chart, cplx z) {
        return integrand(chart, z) * m.density(chart, z);
    });
}

double integrate_excised_flat(const ConformalMetric& m, const Integrand& F,
                              const GradedScheme& scheme, double eps) {
    std::vector<Cell> cells = surface_cells(m, scheme, eps);
    return integrate_cells(cells, F);
}

std::string to_string(ConvergenceVerdict v) {
    switch (v) {
        case ConvergenceVerdict::Converged: return "converged";
        case ConvergenceVerdict::Diverging: return "diverging";
        default: return "inconclusive";
    }
}

ExtrapolationInfo extrapolate_ladder(const std::vector<LadderEntry>& ladder, bool has_cusp,
                                     std::optional<double> forced_exponent) {
    ExtrapolationInfo info;
    if (ladder.empty()) return info;
    info.value = ladder.back().value;
    const std::size_t n = ladder.size();
    if (n < 3) return info;

    double i2 = ladder[n - 1].value, i1 = ladder[n - 2].value, i0 = ladder[n - 3].value;
    double e2 = ladder[n - 1].epsilon, e1 = ladder[n - 2].epsilon, e0 = ladder[n - 3].epsilon;
    double d2 = i2 - i1, d1 = i1 - i0;

    if (std::abs(d2) <= 1e-12 * (std::abs(i2) + 1.0)) {
        info.model = "settled";
        return info;
    }
    if (has_cusp) {
        // Least-squares line through the last three points in x = 1/log(eps).
        double x[3] = {1.0 / std::log(e0), 1.0 / std::log(e1), 1.0 / std::log(e2)};
        double y[3] = {i0, i1, i2};
        double xm = (x[0] + x[1] + x[2]) / 3.0, ym = (y[0] + y[1] + y[2]) / 3.0;
        double sxx = 0.0, sxy = 0.0;
        for (int j = 0; j < 3; ++j) {
            sxx += (x[j] - xm) * (x[j] - xm);
            sxy += (x[j] - xm) * (y[j] - ym);
        }
        double b = sxy / sxx;
        info.model = "log";
        info.exponent = b;
        info.value = ym - b * xm;
        return info;
    }
    double rho = e1 / e2;
    double q = forced_exponent ? *forced_exponent
                               : ((d1 * d2 > 0.0) ? std::log(d1 / d2) / std::log(e0 / e1) : 0.0);
    if (!(std::isfinite(q)) || q < 0.05) return info; // model stays "none", value = last entry
    info.model = "power";
    info.exponent = q;
    info.value = i2 + d2 / (std::pow(rho, q) - 1.0);
    return info;
}

TotalCurvatureResult total_curvature(const ConformalMetric& m, const GradedScheme& scheme) {
    scheme.validate();
    if (!m.surface.compact())
        throw validation_error("global integral requires compact surface");
    TotalCurvatureResult out;
    Integrand k_da = [&](int chart, cplx z) {
        return gaussian_curvature(m, {chart, z}) * m.density(chart, z);
    };
    for (double eps : scheme.excision_ladder)
        out.ladder.push_back({eps, integrate_excised_flat(m, k_da, scheme, eps)});
    bool has_cusp = false;
    for (const SingularPoint& p : m.divisor.points())
        if (p.kind == SingularKind::Cusp) has_cusp = true;
    out.extrapolation = extrapolate_ladder(out.ladder, has_cusp, scheme.richardson_order);
    out.value = out.extrapolation.value;
    return out;
}

LpNormResult curvature_lp_norm(const ConformalMetric& m, double p, const GradedScheme& scheme) {
    scheme.validate();
    if (!(p >= 1.0)) throw validation_error("Lp norm requires p >= 1");
    LpNormResult out;
    Integrand f = [&](int chart, cplx z) {
        return std::pow(std::abs(gaussian_curvature(m, {chart, z})), p) * m.density(chart, z);
    };
    for (double eps : scheme.excision_ladder)
        out.ladder.push_back({eps, std::pow(integrate_excised_flat(m, f, scheme, eps), 1.0 / p)});

    const std::size_t n = out.ladder.size();
    out.value = out.ladder.back().value;
    if (n >= 2) {
        double last = out.ladder[n - 1].value, prev = out.ladder[n - 2].value;
        double inc = std::abs(last - prev);
        if (inc <= 1e-3 * (std::abs(last) + 1e-12)) {
            out.verdict = ConvergenceVerdict::Converged;
        } else if (n >= 3) {
            double inc_prev = std::abs(prev - out.ladder[n - 3].value);
            if (inc >= inc_prev && inc_prev > 0.0) {
                out.verdict = ConvergenceVerdict::Diverging;
                out.growth_exponent = std::log(last / prev)
                                      / std::log(out.ladder[n - 2].epsilon / out.ladder[n - 1].epsilon);
            }
        }
    }
    return out;
}

DirichletEnergyResult dirichlet_energy(const ConformalMetric& m, std::size_t index,
                                       double outer_radius, const GradedScheme& scheme) {
    scheme.validate();
    const RegularPart& reg = m.regular.at(index);
    if (!(outer_radius > 0.0 && outer_radius <= reg.radius))
        throw validation_error("energy annulus must stay within the decomposition radius");
    DirichletEnergyResult out;
    Integrand f = [&](int, cplx z) {
        cplx du = wirtinger(reg.u, z).dz;
        return 4.0 * std::norm(du);
    };
    for (double eps : scheme.excision_ladder) {
        if (!(eps < outer_radius)) {
            out.ladder.push_back({eps, 0.0});
            continue;
        }
        std::vector<Cell> cells = annulus_cells(m, index, eps, outer_radius, scheme);
        out.ladder.push_back({eps, integrate_cells(cells, f)});
    }
    const std::size_t n = out.ladder.size();
    if (n >= 2) {
        double last = out.ladder[n - 1].value, prev = out.ladder[n - 2].value;
        if (std::abs(last - prev) <= 1e-3 * (std::abs(last) + 1e-12))
            out.verdict = ConvergenceVerdict::Converged;
        else if (n >= 3 && std::abs(last - prev) >= std::abs(prev - out.ladder[n - 3].value))
            out.verdict = ConvergenceVerdict::Diverging;
    }
    return out;
}

} // namespace gbv
