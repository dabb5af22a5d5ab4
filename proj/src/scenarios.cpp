#include "chsim/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chsim/kernels.hpp"
#include "chsim/transform.hpp"

namespace chsim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double green_periodic(double x) {
    const double f = wrap_unit(x);
    return std::cosh(f - 0.5) / (2.0 * std::sinh(0.5));
}

double green_periodic_prime(double x) {
    const double f = wrap_unit(x);
    return std::sinh(f - 0.5) / (2.0 * std::sinh(0.5));
}

TrigSeries peakon_pair_series(double p, double x1, double x2, double eps, std::size_t kmax) {
    TrigSeries u;
    u.c.resize(kmax + 1);
    for (std::size_t k = 0; k <= kmax; ++k) {
        const double kk = static_cast<double>(k);
        const double ghat = 1.0 / (1.0 + kTwoPi * kTwoPi * kk * kk);
        const double filt = std::exp(-0.5 * (kTwoPi * kk * eps) * (kTwoPi * kk * eps));
        const std::complex<double> e1 = std::polar(1.0, -kTwoPi * kk * x1);
        const std::complex<double> e2 = std::polar(1.0, -kTwoPi * kk * x2);
        u.c[k] = p * ghat * filt * (e1 - e2);
    }
    u.c[0] = 0.0;  // the pair carries no mean
    return u;
}

namespace {

/// dens = u^2 + ux^2 + rho^2 as an exact trig polynomial, via alias-free
/// resampling: products of K-mode series are 2K-mode series.
TrigSeries energy_density_series(const TrigSeries& u, const TrigSeries& rho) {
    const std::size_t K = std::max(u.c.size(), rho.c.size());
    std::size_t nf = 8;
    while (nf < 4 * K + 2) nf *= 2;
    const TrigSeries ux = u.derivative();
    const TrigSeries rhox = rho;  // evaluated directly
    std::vector<double> dens(nf);
    for (std::size_t j = 0; j < nf; ++j) {
        const double x = static_cast<double>(j) / static_cast<double>(nf);
        const double uu = u(x);
        const double du = ux(x);
        const double rr = rhox(x);
        dens[j] = uu * uu + du * du + rr * rr;
    }
    return TrigSeries::from_samples(dens);
}

}  // namespace

LagrangianState lagrangian_from_series(PeriodicGrid g, const TrigSeries& u, const TrigSeries& rho) {
    const std::size_t n = g.n;
    const TrigSeries dens = energy_density_series(u, rho);
    const TrigSeries ux = u.derivative();
    const double h = dens.mean();
    const TrigSeries osc = dens.primitive_osc();  // vanishes at 0

    auto F = [&](double x) { return h * x + osc(x); };
    const double scale = 1.0 + h;

    LagrangianState X;
    X.grid = g;
    X.zeta.resize(n);
    X.U.resize(n);
    X.yxi.resize(n);
    X.Uxi.resize(n);
    X.nu.resize(n);
    X.r.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double target = scale * g.node(j);
        double lo = -0.5, hi = 1.5;
        for (int it = 0; it < 100 && hi - lo > 1e-16; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (F(mid) + mid < target)
                lo = mid;
            else
                hi = mid;
        }
        const double y = 0.5 * (lo + hi);
        const double d = dens(y);
        X.zeta[j] = y - g.node(j);
        X.yxi[j] = scale / (1.0 + d);
        X.nu[j] = scale - X.yxi[j];
        X.U[j] = u(y);
        X.Uxi[j] = ux(y) * X.yxi[j];
        X.r[j] = rho(y) * X.yxi[j];
    }
    return X;
}

EulerianState eulerian_from_series(PeriodicGrid g, const TrigSeries& u, const TrigSeries& rho) {
    const std::size_t n = g.n;
    const TrigSeries ux = u.derivative();
    EulerianState s;
    s.grid = g;
    s.u.resize(n);
    s.ux.resize(n);
    s.rho.resize(n);
    std::vector<double> dens(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = g.node(j);
        s.u[j] = u(x);
        s.ux[j] = ux(x);
        s.rho[j] = rho(x);
        dens[j] = s.u[j] * s.u[j] + s.ux[j] * s.ux[j] + s.rho[j] * s.rho[j];
    }
    s.mu = PeriodicMeasure(g, std::move(dens));
    return s;
}

ScenarioData build_scenario(const ScenarioSpec& spec) {
    PeriodicGrid g(spec.n);
    ScenarioData out;

    TrigSeries rho;
    rho.c.resize(std::max(2, spec.rho_mode + 1));
    rho.c[0] = spec.rho0;
    if (spec.rho_amp != 0.0 && spec.rho_mode >= 1)
        rho.c[static_cast<std::size_t>(spec.rho_mode)] = 0.5 * spec.rho_amp;

    if (spec.kind == "rest") {
        TrigSeries u;
        u.c.assign(1, 0.0);
        out.eulerian = eulerian_from_series(g, u, rho);
        out.lagrangian = lagrangian_from_series(g, u, rho);
        out.analytic = true;
        return out;
    }

    if (spec.kind == "smooth_fourier") {
        TrigSeries u;
        u.c.assign(3, 0.0);
        u.c[1] = std::complex<double>(0.0, -0.2);  // 0.4 sin(2 pi x)
        u.c[2] = std::complex<double>(0.05, 0.0);  // 0.1 cos(4 pi x)
        out.eulerian = eulerian_from_series(g, u, rho);
        out.lagrangian = lagrangian_from_series(g, u, rho);
        out.analytic = true;
        return out;
    }

    if (spec.kind != "peakon_antipeakon")
        throw std::invalid_argument("build_scenario: unknown kind '" + spec.kind + "'");
    if (!(spec.q > 0.0 && spec.q < 0.5))
        throw std::invalid_argument("make_peakon_antipeakon: q must lie in (0, 1/2)");

    double x1 = 0.5 - spec.q;
    if (spec.snap_midcell) {
        // crest mid-cell and the pair symmetric about 1/2: the sampled arrays
        // then carry the exact reflection symmetry of the continuum solution
        const double dx = g.dx();
        x1 = (std::round(x1 / dx - 0.5) + 0.5) * dx;
    }
    const double x2 = 1.0 - x1;
    out.x1 = x1;
    out.x2 = x2;

    if (spec.smoothing > 0.0 && spec.init == "analytic") {
        const TrigSeries u = peakon_pair_series(spec.p, x1, x2, spec.smoothing, g.n / 2);
        out.eulerian = eulerian_from_series(g, u, rho);
        out.lagrangian = lagrangian_from_series(g, u, rho);
        out.analytic = true;
        return out;
    }

    // exact kinked shape (or transform-initialized run): nodal sampling + L-tilde
    EulerianState s;
    s.grid = g;
    s.u.resize(g.n);
    s.ux.resize(g.n);
    s.rho.resize(g.n);
    std::vector<double> dens(g.n);
    TrigSeries usm;
    if (spec.smoothing > 0.0) usm = peakon_pair_series(spec.p, x1, x2, spec.smoothing, g.n / 2);
    const TrigSeries usmx = usm.derivative();
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.node(j);
        if (spec.smoothing > 0.0) {
            s.u[j] = usm(x);
            s.ux[j] = usmx(x);
        } else {
            s.u[j] = spec.p * (green_periodic(x - x1) - green_periodic(x - x2));
            s.ux[j] = spec.p * (green_periodic_prime(x - x1) - green_periodic_prime(x - x2));
        }
        s.rho[j] = rho(x);
        dens[j] = s.u[j] * s.u[j] + s.ux[j] * s.ux[j] + s.rho[j] * s.rho[j];
    }
    s.mu = PeriodicMeasure(g, std::move(dens));
    out.eulerian = s;
    out.lagrangian = eulerian_to_lagrangian_raw(s);
    out.analytic = false;
    return out;
}

NormalizedPair normalize(const std::vector<double>& u, const std::vector<double>& ux,
                         const std::vector<double>& rho, double kappa, double eta, double t) {
    if (!(eta > 0.0)) throw std::invalid_argument("normalize: eta must be positive");
    const double alpha = 0.5 * kappa;
    NormalizedPair out;
    if (alpha * t != 0.0) {
        out.v = fourier_shift(u, -alpha * t);
        out.vx = fourier_shift(ux, -alpha * t);
    } else {
        out.v = u;
        out.vx = ux;
    }
    for (auto& a : out.v) a += alpha;
    out.tau.resize(rho.size());
    const double se = std::sqrt(eta);
    for (std::size_t j = 0; j < rho.size(); ++j) out.tau[j] = se * rho[j];
    return out;
}

DenormalizedPair denormalize(const std::vector<double>& v, const std::vector<double>& vx,
                             const std::vector<double>& tau, double kappa, double eta, double t) {
    if (!(eta > 0.0)) throw std::invalid_argument("denormalize: eta must be positive");
    const double alpha = 0.5 * kappa;
    std::vector<double> u(v);
    for (auto& a : u) a -= alpha;
    DenormalizedPair out;
    if (alpha * t != 0.0) {
        out.u = fourier_shift(u, alpha * t);
        out.ux = fourier_shift(vx, alpha * t);
    } else {
        out.u = u;
        out.ux = vx;
    }
    out.rho.resize(tau.size());
    const double se = std::sqrt(eta);
    for (std::size_t j = 0; j < tau.size(); ++j) out.rho[j] = tau[j] / se;
    return out;
}

namespace {

/// C-infinity bump supported on [a, b], and its time derivative.
struct TimeBump {
    double a, b;
    double operator()(double t) const {
        if (t <= a || t >= b) return 0.0;
        const double s = (2.0 * t - (a + b)) / (b - a);
        return std::exp(-1.0 / (1.0 - s * s));
    }
    double deriv(double t) const {
        if (t <= a || t >= b) return 0.0;
        const double s = (2.0 * t - (a + b)) / (b - a);
        const double om = 1.0 - s * s;
        return (*this)(t) * (-2.0 * s / (om * om)) * (2.0 / (b - a));
    }
};

struct SpaceMode {
    int k;       // 0: constant 1
    bool sine;   // sin(2 pi k x) vs cos(2 pi k x)
    double operator()(double x) const {
        if (k == 0) return 1.0;
        const double ph = kTwoPi * k * x;
        return sine ? std::sin(ph) : std::cos(ph);
    }
    double deriv(double x) const {
        if (k == 0) return 0.0;
        const double ph = kTwoPi * k * x;
        return sine ? kTwoPi * k * std::cos(ph) : -kTwoPi * k * std::sin(ph);
    }
};

}  // namespace

WeakResiduals weak_residuals(const std::vector<std::pair<double, EulerianState>>& snaps,
                             std::size_t n_time_bumps, std::size_t n_space_modes) {
    if (snaps.size() < 8) throw std::invalid_argument("weak_residuals: need at least 8 snapshots");
    const double T = snaps.back().first;
    const double dt = snaps[1].first - snaps[0].first;
    const std::size_t n = snaps[0].second.grid.n;
    const double dx = snaps[0].second.grid.dx();

    std::vector<TimeBump> bumps;
    for (std::size_t b = 0; b < n_time_bumps; ++b) {
        const double a0 = T * (0.05 + 0.9 * static_cast<double>(b) / static_cast<double>(n_time_bumps));
        const double b0 = T * (0.05 + 0.9 * static_cast<double>(b + 1) / static_cast<double>(n_time_bumps));
        bumps.push_back({a0, std::min(b0 * 1.15, 0.98 * T)});
    }
    std::vector<SpaceMode> modes;
    const SpaceMode all[] = {{0, false}, {1, true}, {1, false}, {2, true}, {2, false}, {3, true}};
    for (std::size_t m = 0; m < n_space_modes && m < 6; ++m) modes.push_back(all[m]);

    // precompute P, Px per snapshot
    std::vector<EulerianP> Ps(snaps.size());
    for (std::size_t k = 0; k < snaps.size(); ++k) Ps[k] = eulerian_p(snaps[k].second, true);

    WeakResiduals worst;
    for (const auto& B : bumps) {
        for (const auto& psi : modes) {
            double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
            for (std::size_t k = 0; k < snaps.size(); ++k) {
                const double t = snaps[k].first;
                const double wt = (k == 0 || k + 1 == snaps.size()) ? 0.5 * dt : dt;
                const double Bt = B(t), Bp = B.deriv(t);
                if (Bt == 0.0 && Bp == 0.0) continue;
                const auto& s = snaps[k].second;
                const auto& P = Ps[k];

                double i_u = 0.0, i_adv = 0.0, i_helm = 0.0, i_px = 0.0;
                double i_rho = 0.0, i_urho = 0.0, i_mu = 0.0, i_flux = 0.0, i_umu = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const double x = s.grid.node(j);
                    const double pv = psi(x), pd = psi.deriv(x);
                    i_u += s.u[j] * pv;
                    i_adv += (s.u[j] * s.ux[j] + P.Px[j]) * pv;
                    i_helm += (P.P[j] - s.u[j] * s.u[j] - 0.5 * s.ux[j] * s.ux[j] -
                               0.5 * s.rho[j] * s.rho[j]) * pv;
                    i_px += P.Px[j] * pd;
                    i_rho += s.rho[j] * pv;
                    i_urho += s.u[j] * s.rho[j] * pd;
                    i_mu += s.mu.density[j] * pv;
                    i_umu += s.u[j] * s.mu.density[j] * pd;
                    const double u3 = s.u[j] * s.u[j] * s.u[j];
                    i_flux += (u3 - 2.0 * P.P[j] * s.u[j]) * pd;
                }
                i_u *= dx; i_adv *= dx; i_helm *= dx; i_px *= dx;
                i_rho *= dx; i_urho *= dx; i_mu *= dx; i_umu *= dx; i_flux *= dx;
                for (const auto& at : s.mu.atoms) {
                    i_mu += psi(at.x) * at.mass;
                    i_umu += interp_periodic(s.u, at.x) * psi.deriv(at.x) * at.mass;
                }

                r1 += wt * (-Bp * i_u + Bt * i_adv);
                r2 += wt * Bt * (i_helm + i_px);
                r3 += wt * (-Bp * i_rho - Bt * i_urho);
                r4 += wt * (Bp * i_mu + Bt * (i_umu - i_flux));
            }
            worst.momentum = std::max(worst.momentum, std::fabs(r1));
            worst.helmholtz = std::max(worst.helmholtz, std::fabs(r2));
            worst.density_transport = std::max(worst.density_transport, std::fabs(r3));
            worst.energy_balance = std::max(worst.energy_balance, std::fabs(r4));
        }
    }
    return worst;
}

SweepResult vanishing_density_sweep(const ScenarioSpec& base, double eps0, int levels) {
    SweepResult out;

    // reference run (rho = 0): locate its collision time
    ScenarioSpec ref = base;
    ref.rho0 = 0.0;
    ref.rho_amp = 0.0;
    ScenarioData refdata = build_scenario(ref);
    EvolveOptions eopt;
    eopt.breaking_threshold = base.breaking_threshold;
    RunResult refrun = run_simulation(refdata.lagrangian, base.T, base.dt, eopt, {}, 8);
    const double tc = refrun.report.t_collision;
    out.t_collision = tc;

    const double before = std::max(0.25 * tc, tc - 0.6);
    const double after = std::min(base.T, tc + 0.6);
    out.probe_times = {before, tc, after};

    auto u_probes = [&](const LagrangianState& X0) {
        std::vector<std::vector<double>> res;
        RunResult rr = run_simulation(X0, base.T, base.dt, eopt, out.probe_times, 64);
        for (const auto& [t, X] : rr.snapshots) {
            (void)t;
            res.push_back(lagrangian_to_eulerian(X).u);
        }
        return res;
    };
    const auto uref = u_probes(refdata.lagrangian);

    for (int k = 0; k <= levels; ++k) {
        ScenarioSpec lvl = base;
        lvl.rho0 = eps0 * std::pow(2.0, -k);
        lvl.rho_amp = 0.0;
        ScenarioData d = build_scenario(lvl);
        const auto uk = u_probes(d.lagrangian);
        SweepRow row;
        row.floor = lvl.rho0;
        for (std::size_t pIdx = 0; pIdx < uref.size(); ++pIdx) {
            double dev = 0.0;
            for (std::size_t j = 0; j < uref[pIdx].size(); ++j)
                dev = std::max(dev, std::fabs(uk[pIdx][j] - uref[pIdx][j]));
            row.deviation.push_back(dev);
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace chsim
