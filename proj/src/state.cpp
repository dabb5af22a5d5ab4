#include "chsim/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace chsim {

PeriodicMeasure::PeriodicMeasure(PeriodicGrid g, std::vector<double> dens, std::vector<Atom> at)
    : grid(g), density(std::move(dens)), atoms(std::move(at)) {
    if (density.size() != grid.n) throw std::invalid_argument("PeriodicMeasure: density size mismatch");
    for (double d : density)
        if (!(d >= 0.0)) throw std::invalid_argument("PeriodicMeasure: density must be nonnegative");
    std::set<double> seen;
    for (auto& a : atoms) {
        if (!(a.mass > 0.0)) throw std::invalid_argument("PeriodicMeasure: atom mass must be positive");
        a.x = wrap_unit(a.x);
        if (!seen.insert(a.x).second) throw std::invalid_argument("PeriodicMeasure: duplicate atom position");
    }
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
    h_ = quadrature(grid, density);
    for (const auto& a : atoms) h_ += a.mass;
}

Relabeling Relabeling::identity(PeriodicGrid g) {
    Relabeling f;
    f.grid = g;
    f.f = g.nodes();
    f.fxi.assign(g.n, 1.0);
    return f;
}

Relabeling Relabeling::shift(PeriodicGrid g, double a) {
    Relabeling f = identity(g);
    for (auto& v : f.f) v += a;
    return f;
}

double Relabeling::alpha() const {
    double lo = std::numeric_limits<double>::max(), hi = 0.0;
    for (double v : fxi) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return std::max(hi - 1.0, 1.0 / lo - 1.0);
}

bool Relabeling::valid() const {
    if (f.size() != grid.n || fxi.size() != grid.n) return false;
    for (std::size_t j = 0; j + 1 < grid.n; ++j)
        if (!(f[j + 1] > f[j])) return false;
    if (!(f[0] + 1.0 > f[grid.n - 1])) return false;  // periodic wrap stays increasing
    for (double v : fxi)
        if (!(v > 0.0) || !std::isfinite(v)) return false;
    return std::isfinite(alpha());
}

namespace {

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double a : v) m = std::max(m, std::fabs(a));
    return m;
}

double l1_norm(const PeriodicGrid& g, const std::vector<double>& v) {
    double s = 0.0;
    for (double a : v) s += std::fabs(a);
    return s * g.dx();
}

}  // namespace

double e_norm(const LagrangianState& X) {
    const auto& g = X.grid;
    double w11_y = sup_norm(X.zeta);
    double s = 0.0;
    for (double a : X.yxi) s += std::fabs(a - 1.0);
    w11_y += s * g.dx();
    double w11_U = sup_norm(X.U) + l1_norm(g, X.Uxi);
    return w11_y + w11_U + l1_norm(g, X.nu) + l1_norm(g, X.r);
}

double e_dist(const LagrangianState& A, const LagrangianState& B) {
    if (A.grid != B.grid) throw std::invalid_argument("e_dist: grid mismatch");
    const auto n = A.grid.n;
    const double dx = A.grid.dx();
    double sup_z = 0.0, sup_U = 0.0, l1_yxi = 0.0, l1_Uxi = 0.0, l1_nu = 0.0, l1_r = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        sup_z = std::max(sup_z, std::fabs(A.zeta[j] - B.zeta[j]));
        sup_U = std::max(sup_U, std::fabs(A.U[j] - B.U[j]));
        l1_yxi += std::fabs(A.yxi[j] - B.yxi[j]);
        l1_Uxi += std::fabs(A.Uxi[j] - B.Uxi[j]);
        l1_nu += std::fabs(A.nu[j] - B.nu[j]);
        l1_r += std::fabs(A.r[j] - B.r[j]);
    }
    return sup_z + l1_yxi * dx + sup_U + l1_Uxi * dx + (l1_nu + l1_r) * dx;
}

ValidationReport validate_F(const LagrangianState& X, double tol) {
    ValidationReport rep;
    const auto n = X.grid.n;
    ConditionReport finite{"finite", true, 0.0, -1};
    ConditionReport pos{"yxi_nu_nonneg", true, 0.0, -1};
    ConditionReport floor{"yxi_plus_nu_floor", true, 0.0, -1};
    ConditionReport compat{"compatibility", true, 0.0, -1};

    const std::vector<double>* fields[] = {&X.zeta, &X.U, &X.yxi, &X.Uxi, &X.nu, &X.r};
    for (const auto* f : fields) {
        if (f->size() != n) throw std::invalid_argument("validate_F: field size mismatch");
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite((*f)[j])) {
                finite.pass = false;
                finite.node = static_cast<std::ptrdiff_t>(j);
            }
        }
    }

    double cmin = std::numeric_limits<double>::max();
    for (std::size_t j = 0; j < n; ++j) {
        double neg = std::max(-X.yxi[j], -X.nu[j]);
        if (neg > pos.residual) {
            pos.residual = neg;
            pos.node = static_cast<std::ptrdiff_t>(j);
        }
        if (neg > tol) pos.pass = false;
        double c = X.yxi[j] + X.nu[j];
        if (c < cmin) {
            cmin = c;
            floor.node = static_cast<std::ptrdiff_t>(j);
        }
        double res = std::fabs(X.yxi[j] * X.nu[j] -
                               (X.yxi[j] * X.yxi[j] * X.U[j] * X.U[j] + X.Uxi[j] * X.Uxi[j] + X.r[j] * X.r[j]));
        if (res > compat.residual) {
            compat.residual = res;
            compat.node = static_cast<std::ptrdiff_t>(j);
        }
    }
    rep.floor_c = cmin;
    floor.residual = cmin;
    // the paper only asks for existence of a positive floor; we demand a
    // nondegenerate empirical one
    floor.pass = cmin > 1e-12;
    compat.pass = compat.residual <= tol;

    rep.conditions = {finite, pos, floor, compat};
    rep.pass = finite.pass && pos.pass && floor.pass && compat.pass;
    return rep;
}

ValidationReport validate_D(const EulerianState& s, double tol) {
    ValidationReport rep;
    const auto n = s.grid.n;
    if (s.u.size() != n || s.ux.size() != n || s.rho.size() != n || s.mu.density.size() != n)
        throw std::invalid_argument("validate_D: field size mismatch");

    ConditionReport pos{"density_nonneg", true, 0.0, -1};
    ConditionReport ac{"mu_ac_matches_energy_density", true, 0.0, -1};
    for (std::size_t j = 0; j < n; ++j) {
        if (s.mu.density[j] < 0.0) {
            pos.pass = false;
            pos.residual = std::max(pos.residual, -s.mu.density[j]);
            pos.node = static_cast<std::ptrdiff_t>(j);
        }
        double want = s.u[j] * s.u[j] + s.ux[j] * s.ux[j] + s.rho[j] * s.rho[j];
        double res = std::fabs(s.mu.density[j] - want);
        if (res > ac.residual) {
            ac.residual = res;
            ac.node = static_cast<std::ptrdiff_t>(j);
        }
    }
    ac.pass = ac.residual <= tol;
    rep.mass = s.mu.total_mass();
    rep.conditions = {pos, ac};
    rep.pass = pos.pass && ac.pass;
    return rep;
}

bool member_FM(const LagrangianState& X, double M) {
    return quadrature(X.grid, X.nu) <= M;
}

bool member_H(const LagrangianState& X, double tol) {
    const double h = quadrature(X.grid, X.nu);
    for (std::size_t j = 0; j < X.grid.n; ++j)
        if (std::fabs(X.yxi[j] + X.nu[j] - (1.0 + h)) > tol) return false;
    // integral of y over one period: mean of zeta plus integral of id
    double a = quadrature(X.grid, X.zeta) + 0.5;
    return std::fabs(a) <= tol;
}

bool member_BM(const LagrangianState& X, double M) {
    double w11_U = 0.0;
    for (double a : X.U) w11_U = std::max(w11_U, std::fabs(a));
    w11_U += l1_norm(X.grid, X.Uxi);
    return w11_U + l1_norm(X.grid, X.yxi) + l1_norm(X.grid, X.nu) <= M;
}

}  // namespace chsim
