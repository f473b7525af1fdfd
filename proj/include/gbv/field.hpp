#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace gbv {

using cplx = std::complex<double>;

/// Bad input: violated precondition, invalid configuration, out-of-domain argument.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical breakdown at a concrete location: non-finite sample, stencil collision.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// A real-valued scalar field of one complex chart coordinate.
///
/// `value` is mandatory. `dz` and `dzdzbar` are optional analytic Wirtinger
/// derivative handles (d/dz and d^2/dz dzbar); when absent, callers fall back
/// to finite differences. Since the field is real, d/dzbar = conj(d/dz).
/// Handles must be pure functions so evaluation is thread-safe.
struct ScalarField {
    std::function<double(cplx)> value;
    std::function<cplx(cplx)> dz;
    std::function<double(cplx)> dzdzbar;

    bool has_dz() const { return static_cast<bool>(dz); }
    bool has_dzdzbar() const { return static_cast<bool>(dzdzbar); }
};

ScalarField constant_field(double c);

/// Pointwise sum. Derivative handles survive only if both operands carry them.
ScalarField add_fields(const ScalarField& a, const ScalarField& b);

/// Value, first and second derivative of a one-variable profile.
struct Profile3 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Field g(|z - center|) built from a radial profile with analytic handles:
///   d/dz   = g'(r) conj(z-a) / (2r)
///   d2/dzdzbar = (g''(r) + g'(r)/r) / 4
/// Must not be evaluated at the center when the profile is singular there.
ScalarField radial_field(cplx center, std::function<Profile3(double)> profile);

/// C^inf monotone step: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
Profile3 smoothstep_cinf(double t);

/// Compactly supported polynomial bump of peak `amplitude` on the open disk
/// |z - center| < width:  A * (1 - r^2/width^2)^8, 0 outside. Carries analytic
/// derivative handles.
ScalarField bump_field(cplx center, double amplitude, double width);

/// Same bump but evaluated at the lattice-reduced difference, making it a
/// well-defined field on the torus C / (Z + tau Z). Requires 2*width below the
/// shortest lattice vector.
ScalarField periodic_bump_field(cplx center, double amplitude, double width, cplx tau);

/// Shortest nonzero lattice vector length of Z + tau Z (search over small indices).
double lattice_systole(cplx tau);

/// Difference vector d reduced to the lattice translate of minimal modulus.
cplx lattice_reduce_centered(cplx d, cplx tau);

} // namespace gbv
