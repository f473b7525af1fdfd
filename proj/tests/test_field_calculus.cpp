#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gbv/calculus.hpp"
#include "gbv/metric.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace gbv;

namespace {

const double kPi = std::numbers::pi;

ScalarField value_only(std::function<double(cplx)> f) {
    ScalarField out;
    out.value = std::move(f);
    return out;
}

// Independent second-order difference quotients used to cross-check the
// library stencils and the analytic handles.
cplx oracle_dz(const std::function<double(cplx)>& f, cplx z, double h) {
    double dx = (f(z + h) - f(z - h)) / (2 * h);
    double dy = (f(z + cplx{0, h}) - f(z - cplx{0, h})) / (2 * h);
    return 0.5 * cplx{dx, -dy};
}

} // namespace

TEST_CASE("wirtinger derivatives of model fields") {
    ScalarField log_abs = value_only([](cplx z) { return std::log(std::abs(z)); });
    WirtingerPair p = wirtinger(log_abs, {1.0, 0.0});
    CHECK(p.dz.real() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(p.dz.imag() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(p.dzbar.real() == doctest::Approx(0.5).epsilon(1e-9));

    ScalarField re = value_only([](cplx z) { return z.real(); });
    WirtingerPair q = wirtinger(re, {0.3, -2.0});
    CHECK(q.dz.real() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(q.dz.imag() == doctest::Approx(0.0).epsilon(1e-10));

    // |z|^2 has dz = conj(z), dzbar = z
    ScalarField sq = value_only([](cplx z) { return std::norm(z); });
    WirtingerPair r = wirtinger(sq, {2.0, 1.0});
    CHECK(std::abs(r.dz - cplx{2.0, -1.0}) <= 1e-8);
    CHECK(std::abs(r.dzbar - cplx{2.0, 1.0}) <= 1e-8);
}

TEST_CASE("finite differences match analytic handles at random points") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> radius(0.15, 0.9), angle(0.0, 2 * kPi);
    ConformalMetric fb = football_metric(0.6);
    ConformalMetric cm = cusp_model_metric(0.9);
    for (int i = 0; i < 100; ++i) {
        cplx z = std::polar(radius(rng), angle(rng));
        for (const ScalarField* f : {&fb.log_factor[0], &cm.log_factor[0]}) {
            ScalarField fd_only = value_only(f->value);
            cplx analytic = wirtinger(*f, z).dz;
            cplx fd = wirtinger(fd_only, z).dz;
            CHECK(std::abs(analytic - fd) <= 1e-6);
        }
    }
}

TEST_CASE("9-point mixed stencil agrees with analytic second derivative") {
    ConformalMetric fb = football_metric(0.4);
    const ScalarField& v = fb.log_factor[0];
    ScalarField fd_only = value_only(v.value);
    for (cplx z : {cplx{0.5, 0.1}, cplx{0.2, -0.6}, cplx{0.9, 0.0}}) {
        CHECK(wirtinger_mixed(fd_only, z) == doctest::Approx(v.dzdzbar(z)).epsilon(1e-5));
    }
}

TEST_CASE("gaussian curvature of the built-in families") {
    CHECK(gaussian_curvature(football_metric(0.0), {0, {1.0, 0.0}})
          == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(gaussian_curvature(football_metric(0.5), {0, {1.0, 1.0}})
          == doctest::Approx(1.0).epsilon(1e-9));

    ConformalMetric fb = football_metric(0.7);
    CHECK(gaussian_curvature(fb, {0, {0.4, -0.2}}) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(gaussian_curvature(fb, {1, {0.25, 0.6}}) == doctest::Approx(1.0).epsilon(1e-6));

    ConformalMetric torus = flat_torus_metric({0.0, 1.0});
    CHECK(std::abs(gaussian_curvature(torus, {0, {0.3, 0.7}})) <= 1e-8);

    ConformalMetric cusp = cusp_model_metric(0.8);
    CHECK(gaussian_curvature(cusp, {0, {0.2, 0.0}}) == doctest::Approx(-1.0).epsilon(1e-6));

    // finite-difference route on the same factors
    ConformalMetric fb_fd = fb;
    fb_fd.log_factor[0] = value_only(fb.log_factor[0].value);
    CHECK(gaussian_curvature(fb_fd, {0, {0.4, -0.2}}) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("curvature agrees across sphere charts") {
    ConformalMetric fb = football_metric(0.3);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> radius(0.7, 1.3), angle(0.0, 2 * kPi);
    for (int i = 0; i < 25; ++i) {
        cplx z = std::polar(radius(rng), angle(rng));
        double kz = gaussian_curvature(fb, {0, z});
        double kw = gaussian_curvature(fb, {1, 1.0 / z});
        CHECK(kz == doctest::Approx(kw).epsilon(1e-6));
    }
}

TEST_CASE("stencil collision near a singular point is refused") {
    ConformalMetric fb = football_metric(0.5);
    ConformalMetric fd = fb;
    fd.log_factor[0] = value_only(fb.log_factor[0].value);
    CHECK_THROWS_AS(gaussian_curvature(fd, {0, {2e-9, 0.0}}), numeric_error);
}

TEST_CASE("liouville residual vanishes on consistent metrics") {
    ConformalMetric fb = football_metric(0.5);
    CHECK(std::abs(liouville_residual(fb, 0, {0.01, 0.01})) <= 1e-5);
    CHECK(std::abs(liouville_residual(fb, 0, {0.2, -0.1})) <= 1e-5);
    CHECK(std::abs(liouville_residual(fb, 1, {0.05, 0.0})) <= 1e-5);

    ConformalMetric cone = flat_cone_metric(0.5, 1.0);
    CHECK(liouville_residual(cone, 0, {0.3, 0.0}) == 0.0);

    Bump b{0, {0.7, 0.0}, 0.3, 0.1};
    ConformalMetric pm = perturb(fb, b);
    CHECK(std::abs(liouville_residual(pm, 0, {0.01, 0.01})) <= 1e-5);
}

TEST_CASE("cusp source residual") {
    ConformalMetric cm = cusp_model_metric(0.8);
    CHECK(std::abs(cusp_source_residual(cm, 0, {0.05, 0.0})) <= 1e-6);
    CHECK(std::abs(cusp_source_residual(cm, 0, {0.1, 0.0})) <= 1e-6);
    CHECK(std::abs(cusp_source_residual(cm, 0, {0.35, 0.35})) <= 1e-6);
    CHECK(std::abs(cusp_source_residual(cm, 0, {0.5, 0.0})) <= 1e-6);

    // bump lands in the regular part; the identity must still close
    Bump b{0, {0.4, 0.0}, 0.2, 0.1};
    ConformalMetric pm = perturb(cm, b);
    CHECK(std::abs(cusp_source_residual(pm, 0, {0.1, 0.0})) <= 1e-5);
    CHECK(std::abs(cusp_source_residual(pm, 0, {0.4, 0.1})) <= 1e-5);

    CHECK_THROWS_AS(cusp_source_residual(cm, 0, {0.85, 0.0}), validation_error);
}

TEST_CASE("hodge star flux against analytic values") {
    for (double beta : {-0.5, 0.5, 2.0}) {
        ScalarField v = value_only([beta](cplx z) { return beta * std::log(std::abs(z)); });
        for (double eps : {0.5, 0.05, 0.001})
            CHECK(hodge_star_flux(v, 0.0, eps, 512) ==
                  doctest::Approx(2 * kPi * beta).epsilon(1e-10));
    }

    ScalarField harmonic = value_only([](cplx z) { return z.real(); });
    CHECK(std::abs(hodge_star_flux(harmonic, 0.0, 0.3, 512)) <= 1e-10);

    ScalarField constant = constant_field(3.25);
    CHECK(hodge_star_flux(constant, {0.4, 0.1}, 0.2, 64) == 0.0);

    // cusp factor: flux = -2 pi - 2 pi / log eps
    ConformalMetric cm = cusp_model_metric(0.9);
    double eps = 1e-3;
    double expected = -2 * kPi - 2 * kPi / std::log(eps);
    CHECK(hodge_star_flux(cm.log_factor[0], 0.0, eps, 512) ==
          doctest::Approx(expected).epsilon(1e-10));
    CHECK(expected == doctest::Approx(-5.3735).epsilon(1e-4));
}

TEST_CASE("abs dz flux decay on the football") {
    ConformalMetric fb = football_metric(0.5);
    const ScalarField& u = fb.regular[0].u;
    // |du/dz| = (1+beta) r^{2 beta + 1} / (1 + r^{2+2 beta})
    double eps = 0.1;
    double a = abs_dz_flux(u, 0.0, eps, 512);
    double b = abs_dz_flux(u, 0.0, eps / 2, 512);
    double oracle = 2 * kPi * 1.5 * std::pow(eps, 4.0) / (1.0 + std::pow(eps, 3.0));
    CHECK(a == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(a / b == doctest::Approx(std::pow(2.0, 2 * 0.5 + 3)).epsilon(0.05));

    ConformalMetric cone = flat_cone_metric(0.7, 1.0);
    CHECK(abs_dz_flux(cone.regular[0].u, 0.0, 0.05, 512) == 0.0);

    // angular refinement is converged at the default count
    double n512 = abs_dz_flux(u, 0.0, 0.1, 512);
    double n1024 = abs_dz_flux(u, 0.0, 0.1, 1024);
    CHECK(std::abs(n512 - n1024) < 1e-8);

    CHECK_THROWS_AS(abs_dz_flux(u, 0.0, 0.1, 8), validation_error);
}

TEST_CASE("smoothstep profile and its derivatives") {
    CHECK(smoothstep_cinf(-0.5).v == 0.0);
    CHECK(smoothstep_cinf(0.0).v == 0.0);
    CHECK(smoothstep_cinf(1.0).v == 1.0);
    CHECK(smoothstep_cinf(0.5).v == doctest::Approx(0.5).epsilon(1e-14));
    double h = 1e-5;
    for (double t : {0.15, 0.4, 0.5, 0.77}) {
        Profile3 p = smoothstep_cinf(t);
        double d1 = (smoothstep_cinf(t + h).v - smoothstep_cinf(t - h).v) / (2 * h);
        double d2 = (smoothstep_cinf(t + h).v - 2 * p.v + smoothstep_cinf(t - h).v) / (h * h);
        CHECK(p.d1 == doctest::Approx(d1).epsilon(1e-7));
        CHECK(p.d2 == doctest::Approx(d2).epsilon(1e-4));
    }
}

TEST_CASE("bump field handles match difference quotients") {
    ScalarField b = bump_field({0.3, -0.2}, 0.7, 0.25);
    CHECK(b.value({0.3, -0.2}) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(b.value({0.7, 0.0}) == 0.0);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-0.2, 0.2);
    for (int i = 0; i < 30; ++i) {
        cplx z = cplx{0.3 + d(rng), -0.2 + d(rng)};
        CHECK(std::abs(b.dz(z) - oracle_dz(b.value, z, 1e-6)) <= 1e-6);
        ScalarField fd_only = value_only(b.value);
        CHECK(wirtinger_mixed(fd_only, z) == doctest::Approx(b.dzdzbar(z)).epsilon(2e-4));
    }
}

TEST_CASE("field-equation residuals vanish at all tested radii") {
    ConformalMetric cone = flat_cone_metric(1.5, 1.0);
    ConformalMetric cm = cusp_model_metric(0.8);
    for (double r : {1e-4, 1e-3, 1e-2, 1e-1}) {
        cplx z = std::polar(r, 0.7);
        for (double beta : {-0.5, 0.5, 2.0})
            CHECK(std::abs(liouville_residual(football_metric(beta), 0, z)) <= 1e-5);
        CHECK(std::abs(liouville_residual(cone, 0, z)) <= 1e-5);
        CHECK(std::abs(cusp_source_residual(cm, 0, z)) <= 1e-5);
        ConformalMetric cs = cusp_sphere_metric(0.5);
        CHECK(std::abs(liouville_residual(cs, 0, z)) <= 1e-5);
        CHECK(std::abs(cusp_source_residual(cs, 1, z)) <= 1e-5);
    }
}

TEST_CASE("derivative policy validation") {
    DerivativePolicy bad;
    bad.relative_step = 0.5;
    ScalarField f = constant_field(1.0);
    CHECK_THROWS_AS(wirtinger(f, {1.0, 0.0}, bad), validation_error);
}
