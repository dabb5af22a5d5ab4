#pragma once

#include <cstddef>
#include <vector>

#include "chsim/state.hpp"

namespace chsim {

/// Evaluator for F_mu(x) = mu([0,x)) for x > 0, 0 at x = 0, -mu([x,0)) for
/// x < 0, extended by periodicity (F(x+1) = F(x) + h). Atoms count on
/// half-open intervals: the atom at x0 is excluded from F(x0).
///
/// The absolutely continuous part integrates the piecewise-linear density
/// exactly, so F_ac is piecewise quadratic and C^1 between atoms.
class CumulativeEnergy {
  public:
    explicit CumulativeEnergy(const PeriodicMeasure& mu);

    double operator()(double x) const;
    /// Density of the absolutely continuous part at x (linear interpolation).
    double density(double x) const;
    double total_mass() const { return h_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

  private:
    double one_period(double frac) const;  // F over [0, frac), frac in [0,1)

    std::size_t n_ = 0;
    std::vector<double> dens_;
    std::vector<double> cum_;  // cum_[j] = integral of density over [0, x_j]
    std::vector<Atom> atoms_;
    double h_ = 0.0;
};

double f_mu(const PeriodicMeasure& mu, double x);

struct TransformOptions {
    double bisect_tol = 1e-13;          // relative to 1+h
    int bisect_max_iter = 60;
    double plateau_rel_threshold = 1e-8;  // y_xi below this*(1+h) marks an atom cell
    // 0: compositions evaluate trigonometric interpolants exactly (best for
    // smooth states); k > 0: monotone linear interpolation on a k-times
    // band-limited refinement (local, positivity-safe, cheaper in loops)
    std::size_t relabel_refine = 0;
};

/// The map L-tilde: Eulerian data (u, rho, mu) to Lagrangian coordinates via
/// monotone bisection of y -> F_mu(y) + y. The output lies in F0:
/// y_xi + nu = 1 + h nodewise.
LagrangianState eulerian_to_lagrangian_raw(const EulerianState& s,
                                           const TransformOptions& opt = {});

/// Group action X * f. Pointwise fields are composed on a spectrally refined
/// grid; the density fields (y_xi, U_xi, nu, r) are transported by exact cell
/// masses of the refined interpolants, so their periodic integrals (h among
/// them) are preserved to machine precision for every f in G.
LagrangianState relabel(const LagrangianState& X, const Relabeling& f,
                        const TransformOptions& opt = {});

/// Pi_1: X * f^{-1} with f = (y + int_0^xi nu)/(1+h); lands in F0.
LagrangianState project_F0(const LagrangianState& X, const TransformOptions& opt = {});

/// Pi_2: shift the argument by a = integral of y, so that the shifted y has
/// zero mean. Expects X in F0.
LagrangianState center(const LagrangianState& X, const TransformOptions& opt = {});

/// Pi = Pi_2 after Pi_1: canonical representative in H.
LagrangianState project(const LagrangianState& X, const TransformOptions& opt = {});

/// The map M back to Eulerian variables: u = U o y^{-1}, mu = push-forward of
/// nu dxi (plateau runs of y become atoms), rho and u_x from the transported
/// ratios r/y_xi and U_xi/y_xi.
EulerianState lagrangian_to_eulerian(const LagrangianState& X,
                                     const TransformOptions& opt = {});

}  // namespace chsim
