#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chsim/evolution.hpp"
#include "chsim/fourier.hpp"
#include "chsim/state.hpp"

namespace chsim {

/// Periodic Green function of 1 - d^2/dx^2 on the unit circle and its
/// derivative (one-sided at the crest; frac(x) = 0 evaluates the right limit).
double green_periodic(double x);
double green_periodic_prime(double x);

/// One-sided Fourier coefficients of p[G_eps(.-x1) - G_eps(.-x2)] where G_eps
/// is the Green function smoothed by a Gaussian filter of width eps.
TrigSeries peakon_pair_series(double p, double x1, double x2, double eps, std::size_t kmax);

/// Exact Lagrangian coordinates of (u, rho, (u^2+ux^2+rho^2)dx) for
/// trig-polynomial u and rho: every field is sampled analytically, so the
/// state is spectrally smooth and compatibility holds to roundoff.
LagrangianState lagrangian_from_series(PeriodicGrid g, const TrigSeries& u,
                                       const TrigSeries& rho);

/// Nodal Eulerian sampling of the same data.
EulerianState eulerian_from_series(PeriodicGrid g, const TrigSeries& u, const TrigSeries& rho);

struct ScenarioSpec {
    std::string kind = "peakon_antipeakon";  // rest | smooth_fourier | peakon_antipeakon
    std::size_t n = 1024;
    double T = 3.0;
    double dt = 1e-3;
    double p = 2.0;           // peak amplitude
    double q = 0.25;          // half separation
    double rho0 = 0.0;        // constant density floor
    double rho_amp = 0.0;     // optional cosine profile on top of rho0
    int rho_mode = 1;
    double smoothing = 1.0 / 128.0;  // crest smoothing width; 0 = exact kink
    bool snap_midcell = true;        // place crests mid-cell, symmetric about 1/2
    double breaking_threshold = 1e-6;
    std::vector<double> output_times;
    std::string init = "analytic";   // analytic | transform
};

struct ScenarioData {
    EulerianState eulerian;
    LagrangianState lagrangian;
    double x1 = 0.0, x2 = 0.0;  // realized crest positions (peakon kind)
    bool analytic = false;      // lagrangian built without interpolation
};

ScenarioData build_scenario(const ScenarioSpec& spec);

/// Galilean-type normalization removing kappa and eta:
/// v(t,x) = u(t, x - kappa t/2) + kappa/2 and tau = sqrt(eta) rho.
struct NormalizedPair {
    std::vector<double> v, vx, tau;
};
NormalizedPair normalize(const std::vector<double>& u, const std::vector<double>& ux,
                         const std::vector<double>& rho, double kappa, double eta, double t);
struct DenormalizedPair {
    std::vector<double> u, ux, rho;
};
DenormalizedPair denormalize(const std::vector<double>& v, const std::vector<double>& vx,
                             const std::vector<double>& tau, double kappa, double eta, double t);

/// Residuals of the four weak-form identities, integrated against a family of
/// bump-in-time times trigonometric-in-space test functions.
struct WeakResiduals {
    double momentum = 0.0;        // weak form of u_t + u u_x + P_x = 0
    double helmholtz = 0.0;       // weak form of P - P_xx = u^2 + ux^2/2 + rho^2/2
    double density_transport = 0.0;
    double energy_balance = 0.0;  // mu_t + (u mu)_x = (u^3 - 2Pu)_x
};

/// Snapshots must be equally spaced in time and cover [0, T].
WeakResiduals weak_residuals(const std::vector<std::pair<double, EulerianState>>& snaps,
                             std::size_t n_time_bumps = 3, std::size_t n_space_modes = 4);

struct SweepRow {
    double floor = 0.0;
    std::vector<double> deviation;  // sup-norm deviation from the rho=0 run per probe time
};

struct SweepResult {
    double t_collision = 0.0;
    std::vector<double> probe_times;
    std::vector<SweepRow> rows;
};

/// Vanishing-density experiment: same u0 with floors rho = eps0 * 2^{-k},
/// deviations measured against the rho = 0 reference before/at/after its
/// collision time.
SweepResult vanishing_density_sweep(const ScenarioSpec& base, double eps0, int levels);

}  // namespace chsim
