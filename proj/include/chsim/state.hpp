#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chsim/grid.hpp"

namespace chsim {

/// Point mass of a periodic measure: position in [0,1), mass > 0.
struct Atom {
    double x = 0.0;
    double mass = 0.0;
};

/// Positive periodic Radon measure: nonnegative density samples (mass per unit
/// length, absolutely continuous part) plus a finite list of atoms.
struct PeriodicMeasure {
    PeriodicGrid grid;
    std::vector<double> density;  // per node, >= 0
    std::vector<Atom> atoms;      // distinct positions, mass > 0

    PeriodicMeasure() = default;
    PeriodicMeasure(PeriodicGrid g, std::vector<double> dens, std::vector<Atom> at = {});

    /// Total mass over one period: quadrature of the density plus atom masses.
    double total_mass() const { return h_; }

    static PeriodicMeasure zero(PeriodicGrid g) {
        return PeriodicMeasure(g, std::vector<double>(g.n, 0.0));
    }

  private:
    double h_ = 0.0;
};

/// Eulerian triplet (u, rho, mu); u_x is stored explicitly because weak
/// solutions carry derivative jumps that nodal differencing would smear.
struct EulerianState {
    PeriodicGrid grid;
    std::vector<double> u;
    std::vector<double> ux;
    std::vector<double> rho;
    PeriodicMeasure mu;
};

/// Lagrangian tuple X = (y, U, nu, r) with the derivative fields y_xi, U_xi
/// carried as independent unknowns; y(xi) = xi + zeta(xi), zeta periodic.
struct LagrangianState {
    PeriodicGrid grid;
    std::vector<double> zeta;
    std::vector<double> U;
    std::vector<double> yxi;
    std::vector<double> Uxi;
    std::vector<double> nu;
    std::vector<double> r;

    std::vector<double> y() const {
        std::vector<double> out(grid.n);
        for (std::size_t j = 0; j < grid.n; ++j) out[j] = grid.node(j) + zeta[j];
        return out;
    }

    /// Total Lagrangian energy h = integral of nu over one period.
    double energy() const { return quadrature(grid, nu); }

    static LagrangianState identity(PeriodicGrid g) {
        LagrangianState X;
        X.grid = g;
        X.zeta.assign(g.n, 0.0);
        X.U.assign(g.n, 0.0);
        X.yxi.assign(g.n, 1.0);
        X.Uxi.assign(g.n, 0.0);
        X.nu.assign(g.n, 0.0);
        X.r.assign(g.n, 0.0);
        return X;
    }
};

/// Grid-sampled relabeling function f with f(xi+1) = f(xi) + 1.
struct Relabeling {
    PeriodicGrid grid;
    std::vector<double> f;    // strictly increasing across nodes
    std::vector<double> fxi;  // > 0

    static Relabeling identity(PeriodicGrid g);
    static Relabeling shift(PeriodicGrid g, double a);

    /// Distortion bound: max(max fxi - 1, 1/min fxi - 1).
    double alpha() const;
    bool valid() const;
};

struct ConditionReport {
    std::string name;
    bool pass = false;
    double residual = 0.0;  // worst-case magnitude for this condition
    std::ptrdiff_t node = -1;
};

struct ValidationReport {
    bool pass = false;
    std::vector<ConditionReport> conditions;
    double mass = 0.0;      // validate_D: mu([0,1))
    double floor_c = 0.0;   // validate_F: min over nodes of yxi + nu

    const ConditionReport* find(const std::string& name) const {
        for (const auto& c : conditions)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// E-norm of X read as a difference from the identity/rest element:
/// ||y-id||_{W11} + ||U||_{W11} + ||nu||_{L1} + ||r||_{L1},
/// with ||f||_{W11} = sup|f| + integral |f_xi|.
double e_norm(const LagrangianState& X);

/// e_norm(A - B); the grids must match.
double e_dist(const LagrangianState& A, const LagrangianState& B);

/// Checks membership in F: positivity of yxi and nu, a positive floor for
/// yxi + nu, and the compatibility identity yxi*nu = yxi^2 U^2 + Uxi^2 + r^2.
ValidationReport validate_F(const LagrangianState& X, double tol);

/// Checks membership in D: density >= 0, atoms valid, and that the absolutely
/// continuous part matches (u^2 + ux^2 + rho^2) dx nodewise within tol.
ValidationReport validate_D(const EulerianState& s, double tol);

/// h = ||nu||_{L1} <= M.
bool member_FM(const LagrangianState& X, double M);

/// yxi + nu = 1 + h nodewise and centering: |integral of y| <= tol.
bool member_H(const LagrangianState& X, double tol);

/// ||U||_{W11} + ||yxi||_{L1} + ||nu||_{L1} <= M.
bool member_BM(const LagrangianState& X, double M);

}  // namespace chsim
