#include "chsim/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chsim/kernels.hpp"

namespace chsim {

LagrangianDerivative rhs(const LagrangianState& X, bool fast_kernels) {
    const std::size_t n = X.grid.n;
    const KernelOutput K = fast_kernels ? compute_pq_fast(X) : compute_pq_direct(X);

    LagrangianDerivative d;
    d.zeta = X.U;
    d.U.resize(n);
    d.yxi = X.Uxi;
    d.Uxi.resize(n);
    d.nu.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        d.U[j] = -K.Q[j];
        d.Uxi[j] = 0.5 * X.nu[j] - (K.P[j] - 0.5 * X.U[j] * X.U[j]) * X.yxi[j];
        d.nu[j] = -2.0 * K.Q[j] * X.U[j] * X.yxi[j] +
                  (3.0 * X.U[j] * X.U[j] - 2.0 * K.P[j]) * X.Uxi[j];
    }
    return d;
}

std::vector<BreakingEvent> detect_breaking(const LagrangianState& X, double threshold) {
    const std::size_t n = X.grid.n;
    const double dx = X.grid.dx();
    const double h = quadrature(X.grid, X.nu);
    const double thr = threshold * (1.0 + h);
    const auto y = X.y();

    std::vector<bool> flat(n);
    for (std::size_t j = 0; j < n; ++j) flat[j] = X.yxi[j] < thr;

    std::vector<BreakingEvent> events;
    std::vector<bool> seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (!flat[j] || seen[j]) continue;
        std::size_t start = j;
        while (true) {
            const std::size_t prev = wrap_index(static_cast<std::ptrdiff_t>(start) - 1, n);
            if (!flat[prev] || prev == j) break;
            start = prev;
        }
        BreakingEvent ev;
        std::size_t k = start;
        do {
            seen[k] = true;
            ev.xi_nodes.push_back(k);
            ev.concentrated_mass += X.nu[k] * dx;
            k = (k + 1) % n;
        } while (flat[k] && k != start);
        ev.x_location = wrap_unit(y[ev.xi_nodes[ev.xi_nodes.size() / 2]]);
        events.push_back(std::move(ev));
    }
    return events;
}

SimReportRow monitor_row(double t, const LagrangianState& X) {
    const std::size_t n = X.grid.n;
    const double dx = X.grid.dx();
    SimReportRow row;
    row.t = t;
    const double h = quadrature(X.grid, X.nu);
    row.h = h;
    const double guard = 1e-12 * (1.0 + h);
    double min_yxi = X.yxi[0];
    double compat = 0.0;
    double e_u2 = 0.0, e_ux2 = 0.0, e_rho2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        min_yxi = std::min(min_yxi, X.yxi[j]);
        const double res = std::fabs(
            X.yxi[j] * X.nu[j] -
            (X.yxi[j] * X.yxi[j] * X.U[j] * X.U[j] + X.Uxi[j] * X.Uxi[j] + X.r[j] * X.r[j]));
        compat = std::max(compat, res);
        e_u2 += X.U[j] * X.U[j] * X.yxi[j];
        if (X.yxi[j] > guard) {
            e_ux2 += X.Uxi[j] * X.Uxi[j] / X.yxi[j];
            e_rho2 += X.r[j] * X.r[j] / X.yxi[j];
        }
    }
    row.energy_u2 = e_u2 * dx;
    row.energy_ux2 = e_ux2 * dx;
    row.energy_rho2 = e_rho2 * dx;
    row.min_yxi = min_yxi;
    row.compat_residual = compat;
    return row;
}

namespace {

struct Work {
    std::vector<double> z, U, yx, Ux, nu;
    explicit Work(std::size_t n) : z(n), U(n), yx(n), Ux(n), nu(n) {}
};

void stage(const LagrangianState& X0, const LagrangianDerivative& k, double c, LagrangianState& out) {
    const std::size_t n = X0.grid.n;
    for (std::size_t j = 0; j < n; ++j) {
        out.zeta[j] = X0.zeta[j] + c * k.zeta[j];
        out.U[j] = X0.U[j] + c * k.U[j];
        out.yxi[j] = X0.yxi[j] + c * k.yxi[j];
        out.Uxi[j] = X0.Uxi[j] + c * k.Uxi[j];
        out.nu[j] = X0.nu[j] + c * k.nu[j];
    }
}

void rk4_step(LagrangianState& X, double dt, bool fast) {
    const std::size_t n = X.grid.n;
    const LagrangianDerivative k1 = rhs(X, fast);
    LagrangianState tmp = X;
    stage(X, k1, 0.5 * dt, tmp);
    const LagrangianDerivative k2 = rhs(tmp, fast);
    stage(X, k2, 0.5 * dt, tmp);
    const LagrangianDerivative k3 = rhs(tmp, fast);
    stage(X, k3, dt, tmp);
    const LagrangianDerivative k4 = rhs(tmp, fast);
    const double c = dt / 6.0;
    for (std::size_t j = 0; j < n; ++j) {
        X.zeta[j] += c * (k1.zeta[j] + 2.0 * k2.zeta[j] + 2.0 * k3.zeta[j] + k4.zeta[j]);
        X.U[j] += c * (k1.U[j] + 2.0 * k2.U[j] + 2.0 * k3.U[j] + k4.U[j]);
        X.yxi[j] += c * (k1.yxi[j] + 2.0 * k2.yxi[j] + 2.0 * k3.yxi[j] + k4.yxi[j]);
        X.Uxi[j] += c * (k1.Uxi[j] + 2.0 * k2.Uxi[j] + 2.0 * k3.Uxi[j] + k4.Uxi[j]);
        X.nu[j] += c * (k1.nu[j] + 2.0 * k2.nu[j] + 2.0 * k3.nu[j] + k4.nu[j]);
    }
}

}  // namespace

RunResult run_simulation(const LagrangianState& X0, double T, double dt,
                         const EvolveOptions& opt, const std::vector<double>& snapshot_times,
                         std::size_t report_stride) {
    if (!(dt > 0.0)) throw std::invalid_argument("run_simulation: dt must be positive");
    if (report_stride == 0) report_stride = 1;
    const std::size_t nsteps = (T <= 0.0) ? 0 : static_cast<std::size_t>(std::llround(T / dt));

    RunResult res;
    res.final_state = X0;
    res.report.kernel_path = opt.fast_kernels ? "fast" : "direct";
    res.report.rows.push_back(monitor_row(0.0, X0));
    const double h0 = res.report.rows[0].h;

    std::vector<double> snap_sorted(snapshot_times);
    std::sort(snap_sorted.begin(), snap_sorted.end());
    std::size_t next_snap = 0;
    while (next_snap < snap_sorted.size() && snap_sorted[next_snap] <= 0.5 * dt) {
        res.snapshots.emplace_back(0.0, X0);
        ++next_snap;
    }

    // track the three most recent minima for parabolic refinement of t_c
    std::vector<double> min_series;
    min_series.reserve(nsteps + 1);
    min_series.push_back(res.report.rows[0].min_yxi);
    res.report.min_yxi_overall = min_series[0];

    LagrangianState X = X0;
    for (std::size_t step = 1; step <= nsteps; ++step) {
        rk4_step(X, dt, opt.fast_kernels);
        const double t = static_cast<double>(step) * dt;

        double mn = X.yxi[0];
        for (double v : X.yxi) mn = std::min(mn, v);
        min_series.push_back(mn);
        res.report.min_yxi_overall = std::min(res.report.min_yxi_overall, mn);

        if (step % report_stride == 0 || step == nsteps) {
            SimReportRow row = monitor_row(t, X);
            if (std::fabs(row.h - h0) > opt.h_drift_abort * std::max(h0, 1e-30)) {
                throw MonitorAbort("energy monitor breach: |h - h0|/h0 = " +
                                       std::to_string(std::fabs(row.h - h0) / std::max(h0, 1e-30)) +
                                       " at t = " + std::to_string(t),
                                   row);
            }
            for (auto ev : detect_breaking(X, opt.breaking_threshold)) {
                ev.time = t;
                res.report.events.push_back(std::move(ev));
            }
            res.report.rows.push_back(row);
        }
        while (next_snap < snap_sorted.size() &&
               std::fabs(snap_sorted[next_snap] - t) <= 0.5 * dt) {
            res.snapshots.emplace_back(t, X);
            ++next_snap;
        }
    }
    res.final_state = std::move(X);

    // collision time: argmin of the per-step min y_xi series, refined by a
    // parabola through the three samples around the minimum
    std::size_t imin = 0;
    for (std::size_t i = 1; i < min_series.size(); ++i)
        if (min_series[i] < min_series[imin]) imin = i;
    double tc = static_cast<double>(imin) * dt;
    if (imin > 0 && imin + 1 < min_series.size()) {
        const double a = min_series[imin - 1], b = min_series[imin], c = min_series[imin + 1];
        const double denom = a - 2.0 * b + c;
        if (std::fabs(denom) > 1e-300) tc += 0.5 * dt * (a - c) / denom;
    }
    res.report.t_collision = tc;
    return res;
}

LagrangianState evolve(const LagrangianState& X0, double t, double dt, const EvolveOptions& opt) {
    return run_simulation(X0, t, dt, opt, {}, 16).final_state;
}

LagrangianState evolve_H(const LagrangianState& X0, double t, double dt, const EvolveOptions& opt) {
    return project(evolve(X0, t, dt, opt), opt.transform);
}

EulerianState flow_D(const EulerianState& s0, double t, double dt, const EvolveOptions& opt) {
    // M o Pi = M and S_t is equivariant, so the projections inside
    // T_t = M S-bar_t L cancel against the relabeling they introduce; skipping
    // them avoids two rounds of composition error on states near breaking.
    const LagrangianState X0 = eulerian_to_lagrangian_raw(s0, opt.transform);
    const LagrangianState Xt = evolve(X0, t, dt, opt);
    return lagrangian_to_eulerian(Xt, opt.transform);
}

}  // namespace chsim
