#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace chsim {

/// Real trigonometric polynomial f(x) = c[0] + 2 Re sum_{k>=1} c[k] e^{2 pi i k x}
/// (one-sided coefficients; c[0] must be real).
struct TrigSeries {
    std::vector<std::complex<double>> c;

    double operator()(double x) const;
    std::vector<double> eval(const std::vector<double>& x) const;
    TrigSeries derivative() const;
    /// Primitive of the oscillating part with value 0 at x = 0; the mean
    /// c[0] integrates to c[0]*x and is returned separately by mean().
    TrigSeries primitive_osc() const;
    double mean() const { return c.empty() ? 0.0 : c[0].real(); }

    /// Exact one-sided coefficients of a trig polynomial from alias-free
    /// uniform samples (n samples resolve modes up to n/2).
    static TrigSeries from_samples(const std::vector<double>& v);
};

/// Band-limited (trigonometric) upsampling of periodic nodal data onto a
/// refine-times finer uniform grid. Exact for trig polynomials below the
/// input Nyquist mode.
std::vector<double> upsample_periodic(const std::vector<double>& v, std::size_t refine);

/// Periodic piecewise-linear interpolation on the uniform unit grid.
double interp_periodic(const std::vector<double>& v, double x);

/// Spectral circular shift: returns samples of the band-limited interpolant
/// at x_j + a. shift(shift(v, a), -a) returns v up to roundoff.
std::vector<double> fourier_shift(const std::vector<double>& v, double a);

}  // namespace chsim
