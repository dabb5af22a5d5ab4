#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chsim/state.hpp"
#include "chsim/transform.hpp"

namespace chsim {

/// Time derivative of the Lagrangian fields. r is absent: r_t = 0 is
/// implemented by never touching the r array.
struct LagrangianDerivative {
    std::vector<double> zeta;
    std::vector<double> U;
    std::vector<double> yxi;
    std::vector<double> Uxi;
    std::vector<double> nu;
};

struct EvolveOptions {
    bool fast_kernels = true;
    double breaking_threshold = 1e-6;   // relative to 1 + h
    double h_drift_abort = 1e-3;        // relative; hard monitor limit
    TransformOptions transform;
};

/// zeta_t = U, U_t = -Q, (y_xi)_t = U_xi,
/// (U_xi)_t = nu/2 - (P - U^2/2) y_xi,
/// nu_t = -2 Q U y_xi + (3U^2 - 2P) U_xi.
LagrangianDerivative rhs(const LagrangianState& X, bool fast_kernels = true);

struct BreakingEvent {
    double time = 0.0;
    std::vector<std::size_t> xi_nodes;
    double x_location = 0.0;
    double concentrated_mass = 0.0;
};

/// Nodes with y_xi < threshold*(1+h), grouped into contiguous periodic runs.
std::vector<BreakingEvent> detect_breaking(const LagrangianState& X, double threshold);

struct SimReportRow {
    double t = 0.0;
    double h = 0.0;
    double energy_u2 = 0.0;
    double energy_ux2 = 0.0;
    double energy_rho2 = 0.0;
    double min_yxi = 0.0;
    double compat_residual = 0.0;
};

SimReportRow monitor_row(double t, const LagrangianState& X);

struct SimReport {
    std::vector<SimReportRow> rows;
    std::vector<BreakingEvent> events;
    std::string kernel_path = "fast";
    double t_collision = -1.0;   // argmin over time of min y_xi, parabolic refine
    double min_yxi_overall = 1.0;
};

struct RunResult {
    SimReport report;
    std::vector<std::pair<double, LagrangianState>> snapshots;
    LagrangianState final_state;
};

/// Fixed-step RK4 integration of the semilinear system to time t (S_t).
/// Breaking is reported, never handled: the flow continues through it.
/// Throws MonitorAbort if the energy monitor breaches its hard limit.
LagrangianState evolve(const LagrangianState& X0, double t, double dt,
                       const EvolveOptions& opt = {});

/// S-bar_t = Pi after S_t.
LagrangianState evolve_H(const LagrangianState& X0, double t, double dt,
                         const EvolveOptions& opt = {});

/// T_t = M after S-bar_t after L; the Eulerian semigroup.
EulerianState flow_D(const EulerianState& s0, double t, double dt,
                     const EvolveOptions& opt = {});

/// Full run with monitoring: rows at every report_stride steps, Lagrangian
/// snapshots at the requested times.
RunResult run_simulation(const LagrangianState& X0, double T, double dt,
                         const EvolveOptions& opt = {},
                         const std::vector<double>& snapshot_times = {},
                         std::size_t report_stride = 1);

struct MonitorAbort : std::runtime_error {
    explicit MonitorAbort(const std::string& what, SimReportRow last)
        : std::runtime_error(what), last_row(last) {}
    SimReportRow last_row;
};

}  // namespace chsim
