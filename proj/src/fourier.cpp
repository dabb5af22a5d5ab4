#include "chsim/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "chsim/grid.hpp"

namespace chsim {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<std::complex<double>> rfft(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<double> in(v);
    std::vector<std::complex<double>> out(n / 2 + 1);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                              reinterpret_cast<fftw_complex*>(out.data()),
                                              FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    for (auto& z : out) z /= static_cast<double>(n);
    return out;
}

// expects normalized one-sided coefficients; FFTW's c2r supplies the sum
// c0 + 2 Re sum c_k e^{2 pi i jk/n} + (-1)^j c_{n/2} directly
std::vector<double> irfft(std::vector<std::complex<double>> spec, std::size_t n) {
    std::vector<double> out(n);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_plan plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                              reinterpret_cast<fftw_complex*>(spec.data()),
                                              out.data(), FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

double TrigSeries::operator()(double x) const {
    if (c.empty()) return 0.0;
    double s = c[0].real();
    const double w = 2.0 * M_PI * x;
    for (std::size_t k = 1; k < c.size(); ++k) {
        const double ph = w * static_cast<double>(k);
        s += 2.0 * (c[k].real() * std::cos(ph) - c[k].imag() * std::sin(ph));
    }
    return s;
}

std::vector<double> TrigSeries::eval(const std::vector<double>& x) const {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (*this)(x[i]);
    return out;
}

TrigSeries TrigSeries::derivative() const {
    TrigSeries d;
    d.c.resize(c.size());
    for (std::size_t k = 0; k < c.size(); ++k)
        d.c[k] = c[k] * std::complex<double>(0.0, 2.0 * M_PI * static_cast<double>(k));
    if (!d.c.empty()) d.c[0] = 0.0;
    return d;
}

TrigSeries TrigSeries::primitive_osc() const {
    TrigSeries p;
    p.c.assign(c.size(), 0.0);
    for (std::size_t k = 1; k < c.size(); ++k)
        p.c[k] = c[k] / std::complex<double>(0.0, 2.0 * M_PI * static_cast<double>(k));
    // subtract the value at 0 so the primitive vanishes there
    double at0 = 0.0;
    for (std::size_t k = 1; k < p.c.size(); ++k) at0 += 2.0 * p.c[k].real();
    if (!p.c.empty()) p.c[0] = -at0;
    return p;
}

TrigSeries TrigSeries::from_samples(const std::vector<double>& v) {
    TrigSeries t;
    t.c = rfft(v);
    // a sampled real signal splits its Nyquist mode between +-n/2; keep the
    // symmetric half so evaluation between nodes is real and unbiased
    if (v.size() % 2 == 0 && !t.c.empty()) t.c.back() *= 0.5;
    return t;
}

std::vector<double> upsample_periodic(const std::vector<double>& v, std::size_t refine) {
    if (refine <= 1) return v;
    const std::size_t n = v.size();
    const std::size_t N = n * refine;
    auto spec = rfft(v);
    if (n % 2 == 0) spec.back() *= 0.5;
    spec.resize(N / 2 + 1, 0.0);
    return irfft(std::move(spec), N);
}

double interp_periodic(const std::vector<double>& v, double x) {
    const std::size_t n = v.size();
    const double f = wrap_unit(x) * static_cast<double>(n);
    std::size_t j = static_cast<std::size_t>(f);
    if (j >= n) j = n - 1;
    const double t = f - static_cast<double>(j);
    const double v1 = (j + 1 < n) ? v[j + 1] : v[0];
    return v[j] + (v1 - v[j]) * t;
}

std::vector<double> fourier_shift(const std::vector<double>& v, double a) {
    const std::size_t n = v.size();
    auto spec = rfft(v);
    const std::size_t kmax = (n % 2 == 0) ? spec.size() - 1 : spec.size();
    for (std::size_t k = 0; k < kmax; ++k) {
        const double ph = 2.0 * M_PI * static_cast<double>(k) * a;
        spec[k] *= std::complex<double>(std::cos(ph), std::sin(ph));
    }
    // the Nyquist pair shifts as cos(pi n (x+a)): a real scaling at the nodes
    if (n % 2 == 0) spec.back() *= std::cos(M_PI * static_cast<double>(n) * a);
    return irfft(std::move(spec), n);
}

}  // namespace chsim
