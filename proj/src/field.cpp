#include "gbv/field.hpp"

#include <cmath>

namespace gbv {

ScalarField constant_field(double c) {
    ScalarField f;
    f.value = [c](cplx) { return c; };
    f.dz = [](cplx) { return cplx{0.0, 0.0}; };
    f.dzdzbar = [](cplx) { return 0.0; };
    return f;
}

ScalarField add_fields(const ScalarField& a, const ScalarField& b) {
    ScalarField f;
    f.value = [av = a.value, bv = b.value](cplx z) { return av(z) + bv(z); };
    if (a.has_dz() && b.has_dz())
        f.dz = [ad = a.dz, bd = b.dz](cplx z) { return ad(z) + bd(z); };
    if (a.has_dzdzbar() && b.has_dzdzbar())
        f.dzdzbar = [am = a.dzdzbar, bm = b.dzdzbar](cplx z) { return am(z) + bm(z); };
    return f;
}

ScalarField radial_field(cplx center, std::function<Profile3(double)> profile) {
    ScalarField f;
    f.value = [center, profile](cplx z) { return profile(std::abs(z - center)).v; };
    f.dz = [center, profile](cplx z) {
        cplx d = z - center;
        double r = std::abs(d);
        return profile(r).d1 * std::conj(d) / (2.0 * r);
    };
    f.dzdzbar = [center, profile](cplx z) {
        double r = std::abs(z - center);
        Profile3 p = profile(r);
        return 0.25 * (p.d2 + p.d1 / r);
    };
    return f;
}

Profile3 smoothstep_cinf(double t) {
    if (t <= 0.0) return {0.0, 0.0, 0.0};
    if (t >= 1.0) return {1.0, 0.0, 0.0};
    double s = 1.0 - t;
    double a = std::exp(-1.0 / t);
    double b = std::exp(-1.0 / s);
    double ap = a / (t * t);
    double bp = -b / (s * s);          // d/dt exp(-1/(1-t))
    double sum = a + b;
    double g2 = 1.0 / (t * t) + 1.0 / (s * s);
    double g3 = 1.0 / (t * t) - 1.0 / (s * s);
    double g2p = -2.0 / (t * t * t) + 2.0 / (s * s * s);
    double n = a * b * g2;             // a'b - ab'
    double np = a * b * (g3 * g2 + g2p);
    Profile3 out;
    out.v = a / sum;
    out.d1 = n / (sum * sum);
    out.d2 = (np * sum - 2.0 * n * (ap + bp)) / (sum * sum * sum);
    return out;
}

ScalarField bump_field(cplx center, double amplitude, double width) {
    if (!(width > 0.0)) throw validation_error("bump width must be positive");
    // A (1 - rho^2)^8 on its support disk: compactly supported, C^7 at the
    // edge, with moderate high derivatives so default quadrature resolutions
    // integrate it to full accuracy.
    constexpr double k = 8.0;
    auto eval = [center, amplitude, width](cplx z, cplx* dz, double* mixed) -> double {
        cplx d = z - center;
        double w2 = width * width;
        double q = 1.0 - std::norm(d) / w2;
        if (q <= 0.0) {
            if (dz) *dz = 0.0;
            if (mixed) *mixed = 0.0;
            return 0.0;
        }
        double qk2 = amplitude * std::pow(q, k - 2.0);
        if (dz) *dz = -(k / w2) * qk2 * q * std::conj(d);
        if (mixed) *mixed = (k / w2) * qk2 * ((k - 1.0) * std::norm(d) / w2 - q);
        return qk2 * q * q;
    };
    ScalarField f;
    f.value = [eval](cplx z) { return eval(z, nullptr, nullptr); };
    f.dz = [eval](cplx z) { cplx d; eval(z, &d, nullptr); return d; };
    f.dzdzbar = [eval](cplx z) { double m; eval(z, nullptr, &m); return m; };
    return f;
}

double lattice_systole(cplx tau) {
    double best = std::abs(tau) + 2.0;
    for (int m = -2; m <= 2; ++m)
        for (int n = -2; n <= 2; ++n) {
            if (m == 0 && n == 0) continue;
            best = std::min(best, std::abs(double(m) + double(n) * tau));
        }
    return best;
}

cplx lattice_reduce_centered(cplx d, cplx tau) {
    // Nearest-integer reduction in lattice coordinates, then a local search to
    // cover skew lattices where rounding is not optimal.
    double t = d.imag() / tau.imag();
    double s = d.real() - t * tau.real();
    cplx base = d - std::round(s) - std::round(t) * tau;
    cplx best = base;
    for (int m = -1; m <= 1; ++m)
        for (int n = -1; n <= 1; ++n) {
            cplx cand = base - double(m) - double(n) * tau;
            if (std::abs(cand) < std::abs(best)) best = cand;
        }
    return best;
}

ScalarField periodic_bump_field(cplx center, double amplitude, double width, cplx tau) {
    if (!(2.0 * width < lattice_systole(tau)))
        throw validation_error("bump is too wide for the torus lattice");
    ScalarField flat = bump_field(0.0, amplitude, width);
    ScalarField f;
    f.value = [flat, center, tau](cplx z) { return flat.value(lattice_reduce_centered(z - center, tau)); };
    f.dz = [flat, center, tau](cplx z) { return flat.dz(lattice_reduce_centered(z - center, tau)); };
    f.dzdzbar = [flat, center, tau](cplx z) { return flat.dzdzbar(lattice_reduce_centered(z - center, tau)); };
    return f;
}

} // namespace gbv
