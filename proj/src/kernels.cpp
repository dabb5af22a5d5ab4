#include "chsim/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace chsim {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;

std::vector<double> source_w(const LagrangianState& X) {
    std::vector<double> w(X.grid.n);
    for (std::size_t j = 0; j < X.grid.n; ++j) w[j] = X.U[j] * X.U[j] * X.yxi[j] + X.nu[j];
    return w;
}

/// Kink correction and derivative fields shared by both paths.
void finish(const LagrangianState& X, const std::vector<double>& w, KernelOutput& out) {
    const std::size_t n = X.grid.n;
    const double dx = X.grid.dx();
    const double c = dx * dx / 24.0;
    out.Pxi.resize(n);
    out.Qxi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double wprime =
            (w[(i + 1) % n] - w[(i + n - 1) % n]) / (2.0 * dx);
        out.P[i] -= c * w[i] * X.yxi[i];
        out.Q[i] += c * wprime;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.Pxi[i] = out.Q[i] * X.yxi[i];
        out.Qxi[i] = (out.P[i] - 0.5 * X.U[i] * X.U[i]) * X.yxi[i] - 0.5 * X.nu[i];
    }
}

}  // namespace

KernelOutput compute_pq_direct(const LagrangianState& X) {
    const std::size_t n = X.grid.n;
    const double dx = X.grid.dx();
    const auto y = X.y();
    const auto w = source_w(X);

    KernelOutput out;
    out.P.assign(n, 0.0);
    out.Q.assign(n, 0.0);

    const double cosh_fac = 1.0 / (2.0 * (kE - 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        long double accP = 0.0L, accQ = 0.0L;
        for (std::size_t j = 0; j <= n; ++j) {
            const double yj = (j < n) ? y[j] : y[0] + 1.0;
            const double wj = (j < n) ? w[j] : w[0];
            const double cw = (j == 0 || j == n) ? 0.5 * dx : dx;
            const double d = y[i] - yj;
            const double ch = std::cosh(d) * cosh_fac;
            double expP, sgnExpQ;
            if (j < i) {  // eta left of xi: sgn = +1
                expP = std::exp(-d);
                sgnExpQ = expP;
            } else if (j > i) {  // sgn = -1
                expP = std::exp(d);
                sgnExpQ = -expP;
            } else {  // self node: mean of one-sided limits, except at the boundary
                expP = 1.0;
                sgnExpQ = (i == 0) ? -1.0 : 0.0;
            }
            accP += static_cast<long double>((ch + 0.25 * expP) * wj * cw);
            accQ += static_cast<long double>((std::sinh(d) * cosh_fac - 0.25 * sgnExpQ) * wj * cw);
        }
        out.P[i] = static_cast<double>(accP);
        out.Q[i] = static_cast<double>(accQ);
    }
    finish(X, w, out);
    return out;
}

KernelOutput compute_pq_fast(const LagrangianState& X) {
    const std::size_t n = X.grid.n;
    const double dx = X.grid.dx();
    const auto y = X.y();

    // exponents are O(1) once shifted; anything larger means y is broken
    double span = 0.0;
    for (double v : y) span = std::max(span, std::fabs(v - y[0]));
    if (span > 20.0) return compute_pq_direct(X);

    const auto w = source_w(X);
    const double y0 = y[0];

    std::vector<double> ey(n), emy(n), a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
        ey[j] = std::exp(y[j] - y0);
        emy[j] = std::exp(-(y[j] - y0));
        a[j] = ey[j] * w[j];
        b[j] = emy[j] * w[j];
    }

    // A_i = dx (a0/2 + a1 + ... + a_{i-1} + a_i/2), A_0 = 0
    // B_i = dx (b_i/2 + b_{i+1} + ... + b_{n-1} + b0 e^{-1}/2)
    std::vector<double> A(n), B(n);
    long double acc = 0.5L * a[0];
    A[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        A[i] = static_cast<double>((acc + 0.5L * a[i]) * dx);
        acc += a[i];
    }
    const double bwrap = b[0] / kE;
    long double accb = 0.5L * bwrap;
    for (std::size_t i = n; i-- > 0;) {
        B[i] = static_cast<double>((accb + 0.5L * b[i]) * dx);
        accb += b[i];
    }

    long double sa = 0.0L, sb = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
        sa += a[j];
        sb += b[j];
    }
    const double Cp = static_cast<double>((sa + 0.5L * (kE - 1.0) * a[0]) * dx);
    const double Cm = static_cast<double>((sb + 0.5L * (1.0 / kE - 1.0) * b[0]) * dx);

    KernelOutput out;
    out.P.resize(n);
    out.Q.resize(n);
    const double fac = 1.0 / (4.0 * (kE - 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double coshterm = (ey[i] * Cm + emy[i] * Cp) * fac;
        const double sinhterm = (ey[i] * Cm - emy[i] * Cp) * fac;
        out.P[i] = coshterm + 0.25 * (emy[i] * A[i] + ey[i] * B[i]);
        out.Q[i] = sinhterm - 0.25 * (emy[i] * A[i] - ey[i] * B[i]);
    }
    finish(X, w, out);
    return out;
}

EulerianP eulerian_p(const EulerianState& s, bool with_measure) {
    const std::size_t n = s.grid.n;
    const double dx = s.grid.dx();
    const auto x = s.grid.nodes();

    std::vector<double> src(n);
    if (with_measure) {
        for (std::size_t j = 0; j < n; ++j) src[j] = s.u[j] * s.u[j] + s.mu.density[j];
    } else {
        for (std::size_t j = 0; j < n; ++j)
            src[j] = 2.0 * s.u[j] * s.u[j] + s.ux[j] * s.ux[j] + s.rho[j] * s.rho[j];
    }

    EulerianP out;
    out.P.assign(n, 0.0);
    out.Px.assign(n, 0.0);
    const double cosh_fac = 1.0 / (2.0 * (kE - 1.0));

    for (std::size_t i = 0; i < n; ++i) {
        long double accP = 0.0L, accX = 0.0L;
        for (std::size_t j = 0; j <= n; ++j) {
            const double zj = (j < n) ? x[j] : 1.0;
            const double sj = (j < n) ? src[j] : src[0];
            const double cw = (j == 0 || j == n) ? 0.5 * dx : dx;
            const double d = x[i] - zj;
            double expP, sgnExp;
            if (j < i) {
                expP = std::exp(-d);
                sgnExp = expP;
            } else if (j > i) {
                expP = std::exp(d);
                sgnExp = -expP;
            } else {
                expP = 1.0;
                sgnExp = (i == 0) ? -1.0 : 0.0;
            }
            accP += static_cast<long double>((std::cosh(d) * cosh_fac + 0.25 * expP) * sj * cw);
            accX += static_cast<long double>((std::sinh(d) * cosh_fac - 0.25 * sgnExp) * sj * cw);
        }
        out.P[i] = static_cast<double>(accP);
        out.Px[i] = static_cast<double>(accX);
    }

    // atoms: exact kernel-weighted point terms
    if (with_measure) {
        for (const auto& at : s.mu.atoms) {
            for (std::size_t i = 0; i < n; ++i) {
                const double d = x[i] - at.x;
                const double sgn = (d > 0.0) ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
                out.P[i] += (std::cosh(d) * cosh_fac + 0.25 * std::exp(-sgn * d)) * at.mass;
                out.Px[i] += (std::sinh(d) * cosh_fac - 0.25 * sgn * std::exp(-sgn * d)) * at.mass;
            }
        }
    }

    const double c = dx * dx / 24.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sprime = (src[(i + 1) % n] - src[(i + n - 1) % n]) / (2.0 * dx);
        out.P[i] -= c * src[i];
        out.Px[i] += c * sprime;
    }
    return out;
}

}  // namespace chsim
