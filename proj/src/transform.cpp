#include "chsim/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chsim/fourier.hpp"

namespace chsim {

CumulativeEnergy::CumulativeEnergy(const PeriodicMeasure& mu)
    : n_(mu.grid.n), dens_(mu.density), atoms_(mu.atoms) {
    const double dx = mu.grid.dx();
    cum_.resize(n_ + 1);
    cum_[0] = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
        const double d1 = dens_[(j + 1) % n_];
        cum_[j + 1] = cum_[j] + 0.5 * (dens_[j] + d1) * dx;
    }
    h_ = mu.total_mass();
}

double CumulativeEnergy::one_period(double frac) const {
    const double f = frac * static_cast<double>(n_);
    std::size_t j = static_cast<std::size_t>(f);
    if (j >= n_) j = n_ - 1;
    const double t = frac - static_cast<double>(j) / static_cast<double>(n_);
    const double d0 = dens_[j];
    const double d1 = dens_[(j + 1) % n_];
    const double slope = (d1 - d0) * static_cast<double>(n_);
    double v = cum_[j] + d0 * t + 0.5 * slope * t * t;
    for (const auto& a : atoms_)
        if (a.x < frac) v += a.mass;
    return v;
}

double CumulativeEnergy::operator()(double x) const {
    const double fl = std::floor(x);
    return h_ * fl + one_period(x - fl);
}

double CumulativeEnergy::density(double x) const {
    const double frac = wrap_unit(x);
    const double f = frac * static_cast<double>(n_);
    std::size_t j = static_cast<std::size_t>(f);
    if (j >= n_) j = n_ - 1;
    const double t = f - static_cast<double>(j);
    const double d1 = dens_[(j + 1) % n_];
    return dens_[j] + (d1 - dens_[j]) * t;
}

double f_mu(const PeriodicMeasure& mu, double x) { return CumulativeEnergy(mu)(x); }

LagrangianState eulerian_to_lagrangian_raw(const EulerianState& s, const TransformOptions& opt) {
    const auto& g = s.grid;
    const std::size_t n = g.n;
    const CumulativeEnergy F(s.mu);
    const double h = F.total_mass();
    const double scale = 1.0 + h;

    // jump intervals (G(p), G(p)+m] of y -> F(y)+y at the atoms
    struct Jump {
        double x, lo, hi;
    };
    std::vector<Jump> jumps;
    for (const auto& a : F.atoms()) {
        const double Gp = F(a.x) + a.x;
        jumps.push_back({a.x, Gp, Gp + a.mass});
    }

    LagrangianState X;
    X.grid = g;
    X.zeta.resize(n);
    X.U.resize(n);
    X.yxi.resize(n);
    X.Uxi.resize(n);
    X.nu.resize(n);
    X.r.resize(n);

    const double tol = opt.bisect_tol * scale;
    for (std::size_t j = 0; j < n; ++j) {
        const double target = scale * g.node(j);
        double yj = 0.0;
        bool plateau = false;
        for (const auto& jp : jumps) {
            if (target > jp.lo && target <= jp.hi) {
                yj = jp.x;
                plateau = true;
                break;
            }
        }
        if (!plateau) {
            // y(xi) = sup{y : F(y) + y < target}; F + id is strictly increasing
            double lo = -1.0, hi = 2.0;
            int it = 0;
            while (hi - lo > tol && it < opt.bisect_max_iter + 140) {
                const double mid = 0.5 * (lo + hi);
                if (F(mid) + mid < target)
                    lo = mid;
                else
                    hi = mid;
                ++it;
            }
            if (hi - lo > 1e3 * tol)
                throw std::runtime_error("eulerian_to_lagrangian_raw: bisection stalled");
            yj = 0.5 * (lo + hi);
        }
        X.zeta[j] = yj - g.node(j);
        if (plateau) {
            X.yxi[j] = 0.0;
            X.nu[j] = scale;
            X.U[j] = interp_periodic(s.u, yj);
            X.r[j] = 0.0;
            X.Uxi[j] = 0.0;  // forced by compatibility once yxi = 0 and r = 0
        } else {
            const double d = F.density(yj);
            X.yxi[j] = scale / (1.0 + d);
            X.nu[j] = scale - X.yxi[j];
            X.U[j] = interp_periodic(s.u, yj);
            X.r[j] = interp_periodic(s.rho, yj) * X.yxi[j];
            X.Uxi[j] = interp_periodic(s.ux, yj) * X.yxi[j];
        }
    }
    return X;
}

namespace {

void isotonize_y(const PeriodicGrid& g, std::vector<double>& zeta) {
    const std::size_t n = g.n;
    double prev = g.node(0) + zeta[0];
    for (std::size_t j = 1; j < n; ++j) {
        const double yj = g.node(j) + zeta[j];
        if (yj < prev) zeta[j] = prev - g.node(j);
        prev = g.node(j) + zeta[j];
    }
}

/// Composes every field with f. Spectral mode evaluates the trigonometric
/// interpolants exactly at the f-nodes; refined mode interpolates linearly on
/// a band-limited refinement (cheaper, used inside optimizer loops).
LagrangianState compose_fields(const LagrangianState& X, const std::vector<double>& fvals,
                               const std::vector<double>& fxi, const TransformOptions& opt) {
    const std::size_t n = X.grid.n;
    LagrangianState out;
    out.grid = X.grid;
    out.zeta.resize(n);
    out.U.resize(n);
    out.yxi.resize(n);
    out.Uxi.resize(n);
    out.nu.resize(n);
    out.r.resize(n);

    if (opt.relabel_refine == 0) {
        const TrigSeries tz = TrigSeries::from_samples(X.zeta);
        const TrigSeries tU = TrigSeries::from_samples(X.U);
        const TrigSeries tyx = TrigSeries::from_samples(X.yxi);
        const TrigSeries tUx = TrigSeries::from_samples(X.Uxi);
        const TrigSeries tnu = TrigSeries::from_samples(X.nu);
        const TrigSeries tr = TrigSeries::from_samples(X.r);
        for (std::size_t j = 0; j < n; ++j) {
            const double fj = fvals[j];
            out.zeta[j] = fj + tz(fj) - X.grid.node(j);
            out.U[j] = tU(fj);
            out.yxi[j] = tyx(fj) * fxi[j];
            out.Uxi[j] = tUx(fj) * fxi[j];
            out.nu[j] = tnu(fj) * fxi[j];
            out.r[j] = tr(fj) * fxi[j];
        }
    } else {
        const std::size_t R = opt.relabel_refine;
        const auto rz = upsample_periodic(X.zeta, R);
        const auto rU = upsample_periodic(X.U, R);
        const auto ryx = upsample_periodic(X.yxi, R);
        const auto rUx = upsample_periodic(X.Uxi, R);
        const auto rnu = upsample_periodic(X.nu, R);
        const auto rr = upsample_periodic(X.r, R);
        for (std::size_t j = 0; j < n; ++j) {
            const double fj = fvals[j];
            out.zeta[j] = fj + interp_periodic(rz, fj) - X.grid.node(j);
            out.U[j] = interp_periodic(rU, fj);
            out.yxi[j] = interp_periodic(ryx, fj) * fxi[j];
            out.Uxi[j] = interp_periodic(rUx, fj) * fxi[j];
            out.nu[j] = interp_periodic(rnu, fj) * fxi[j];
            out.r[j] = interp_periodic(rr, fj) * fxi[j];
        }
    }
    isotonize_y(X.grid, out.zeta);
    for (std::size_t j = 0; j < n; ++j) {
        if (out.yxi[j] < 0.0 && out.yxi[j] > -1e-12) out.yxi[j] = 0.0;
        if (out.nu[j] < 0.0 && out.nu[j] > -1e-12) out.nu[j] = 0.0;
    }
    return out;
}

}  // namespace

LagrangianState relabel(const LagrangianState& X, const Relabeling& f, const TransformOptions& opt) {
    if (X.grid != f.grid) throw std::invalid_argument("relabel: grid mismatch");
    if (!f.valid()) throw std::invalid_argument("relabel: invalid relabeling function");
    return compose_fields(X, f.f, f.fxi, opt);
}

LagrangianState project_F0(const LagrangianState& X, const TransformOptions& opt) {
    const std::size_t n = X.grid.n;
    const double h = quadrature(X.grid, X.nu);

    // f = (y + int_0^xi nu)/(1+h) = xi + (zeta + N_osc(xi) + N_osc-free part)/(1+h)
    const TrigSeries tz = TrigSeries::from_samples(X.zeta);
    const TrigSeries tnu = TrigSeries::from_samples(X.nu);
    const TrigSeries tnu_prim = tnu.primitive_osc();
    const TrigSeries tzd = tz.derivative();

    auto fof = [&](double xi) {
        return xi + (tz(xi) + tnu_prim(xi) + (tnu.mean() - h) * xi) / (1.0 + h);
    };
    // nu.mean() equals h by definition; keep the term so the map is exact
    // even if a caller passes inconsistent data
    auto fprime = [&](double xi) { return 1.0 + (tzd(xi) + tnu(xi) - h) / (1.0 + h); };

    Relabeling g;
    g.grid = X.grid;
    g.f.resize(n);
    g.fxi.resize(n);
    const double tol = opt.bisect_tol;
    for (std::size_t j = 0; j < n; ++j) {
        const double target = X.grid.node(j);
        double lo = target - 1.5, hi = target + 1.5;
        while (fof(lo) >= target) lo -= 1.0;
        while (fof(hi) < target) hi += 1.0;
        int it = 0;
        while (hi - lo > tol && it < opt.bisect_max_iter + 140) {
            const double mid = 0.5 * (lo + hi);
            if (fof(mid) < target)
                lo = mid;
            else
                hi = mid;
            ++it;
        }
        g.f[j] = 0.5 * (lo + hi);
        g.fxi[j] = 1.0 / std::max(fprime(g.f[j]), 1e-300);
    }
    return relabel(X, g, opt);
}

LagrangianState center(const LagrangianState& X, const TransformOptions& opt) {
    (void)opt;
    LagrangianState out = X;
    double a_total = 0.0;
    for (int pass = 0; pass < 4; ++pass) {
        const double a = quadrature(out.grid, out.zeta) + 0.5;  // integral of y
        if (std::fabs(a) <= 1e-14) break;
        a_total += a;
        // X(xi - a): a spectral shift preserves the field means exactly
        out.zeta = fourier_shift(X.zeta, -a_total);
        for (auto& z : out.zeta) z -= a_total;
        out.U = fourier_shift(X.U, -a_total);
        out.yxi = fourier_shift(X.yxi, -a_total);
        out.Uxi = fourier_shift(X.Uxi, -a_total);
        out.nu = fourier_shift(X.nu, -a_total);
        out.r = fourier_shift(X.r, -a_total);
    }
    return out;
}

LagrangianState project(const LagrangianState& X, const TransformOptions& opt) {
    return center(project_F0(X, opt), opt);
}

EulerianState lagrangian_to_eulerian(const LagrangianState& X, const TransformOptions& opt) {
    const std::size_t n = X.grid.n;
    const double dx = X.grid.dx();
    const auto y = X.y();
    const double h = quadrature(X.grid, X.nu);
    const double thr = opt.plateau_rel_threshold * (1.0 + h);

    // plateau runs of y (periodic in the index) turn into atoms
    std::vector<bool> flat(n);
    for (std::size_t j = 0; j < n; ++j) flat[j] = X.yxi[j] < thr;
    std::vector<Atom> atoms;
    std::vector<bool> seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (!flat[j] || seen[j]) continue;
        std::size_t start = j;
        while (true) {
            const std::size_t prev = wrap_index(static_cast<std::ptrdiff_t>(start) - 1, n);
            if (!flat[prev] || prev == j) break;
            start = prev;
        }
        double mass = 0.0, Umin = X.U[start], Umax = X.U[start];
        std::size_t k = start, len = 0;
        do {
            seen[k] = true;
            mass += X.nu[k] * dx;
            Umin = std::min(Umin, X.U[k]);
            Umax = std::max(Umax, X.U[k]);
            ++len;
            k = (k + 1) % n;
        } while (flat[k] && k != start);
        if (Umax - Umin > 1e-6 * (1.0 + std::fabs(Umax)))
            throw std::runtime_error("lagrangian_to_eulerian: nonconstant U across a plateau");
        if (mass > 1e-12 * (1.0 + h)) {
            const std::size_t mid = (start + len / 2) % n;
            atoms.push_back({wrap_unit(y[mid]), mass});
        }
    }

    EulerianState s;
    s.grid = X.grid;
    s.u.resize(n);
    s.ux.resize(n);
    s.rho.resize(n);
    std::vector<double> dens(n);

    std::vector<double> ywork(y);
    for (std::size_t j = 1; j < n; ++j) ywork[j] = std::max(ywork[j], ywork[j - 1]);
    const double y0 = ywork[0];

    for (std::size_t i = 0; i < n; ++i) {
        double x = X.grid.node(i);
        x += std::ceil(y0 - x);  // representative of x in [y0, y0+1)
        if (x >= y0 + 1.0) x -= 1.0;
        if (x < y0) x += 1.0;
        std::size_t lo = 0, hi = n;  // y_lo <= x < y_hi with y_n = y0+1
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (ywork[mid] <= x)
                lo = mid;
            else
                hi = mid;
        }
        const std::size_t j0 = lo;
        const std::size_t j1 = (lo + 1) % n;
        const double ya = ywork[j0];
        const double yb = (lo + 1 < n) ? ywork[lo + 1] : y0 + 1.0;
        const double width = yb - ya;
        const double t = (width > 0.0) ? std::clamp((x - ya) / width, 0.0, 1.0) : 0.5;

        auto lerp = [&](const std::vector<double>& v) { return v[j0] + (v[j1] - v[j0]) * t; };
        s.u[i] = lerp(X.U);
        // transported ratios: where the inversion cell straddles a plateau
        // edge, blending would mix singular and absolutely continuous parts,
        // so take the ratios one-sided from the regular endpoint
        const bool flat0 = X.yxi[j0] < thr, flat1 = X.yxi[j1] < thr;
        if (!flat0 && !flat1) {
            const double yxi_here = lerp(X.yxi);
            s.ux[i] = lerp(X.Uxi) / yxi_here;
            s.rho[i] = lerp(X.r) / yxi_here;
            dens[i] = lerp(X.nu) / yxi_here;
        } else if (flat0 != flat1) {
            const std::size_t jr = flat0 ? j1 : j0;
            s.ux[i] = X.Uxi[jr] / X.yxi[jr];
            s.rho[i] = X.r[jr] / X.yxi[jr];
            dens[i] = X.nu[jr] / X.yxi[jr];
        } else {
            // a grid node sitting exactly on an atom image; the AC part there
            // carries no u_x^2 or rho^2 information
            s.ux[i] = 0.0;
            s.rho[i] = 0.0;
            dens[i] = s.u[i] * s.u[i];
        }
    }
    s.mu = PeriodicMeasure(X.grid, std::move(dens), std::move(atoms));
    return s;
}

}  // namespace chsim
