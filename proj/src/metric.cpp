#include "chsim/metric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace chsim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Relabeling RelabelingFamily::realize(const std::vector<double>& theta) const {
    if (theta.size() != dim()) throw std::invalid_argument("RelabelingFamily: bad theta size");
    std::vector<double> th(theta);
    clamp(th);
    const std::size_t n = grid.n;
    Relabeling f;
    f.grid = grid;
    f.f.resize(n);
    f.fxi.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double xi = grid.node(j);
        double v = xi + th[0];
        double d = 1.0;
        for (std::size_t k = 1; k <= k_max; ++k) {
            const double a = th[2 * k - 1], b = th[2 * k];
            const double ph = kTwoPi * static_cast<double>(k) * xi;
            v += a * std::sin(ph) + b * std::cos(ph);
            d += kTwoPi * static_cast<double>(k) * (a * std::cos(ph) - b * std::sin(ph));
        }
        f.f[j] = v;
        f.fxi[j] = d;
    }
    return f;
}

void RelabelingFamily::clamp(std::vector<double>& theta) const {
    double bound = 0.0;
    for (std::size_t k = 1; k <= k_max; ++k)
        bound += kTwoPi * static_cast<double>(k) *
                 (std::fabs(theta[2 * k - 1]) + std::fabs(theta[2 * k]));
    const double room = 1.0 - min_slope;
    if (bound > room) {
        const double s = room / bound;
        for (std::size_t i = 1; i < theta.size(); ++i) theta[i] *= s;
    }
}

namespace {

struct Objective {
    const LagrangianState& Xa;
    const LagrangianState& Xb;
    const RelabelingFamily& family;
    const TransformOptions& topt;
    mutable std::size_t evals = 0;

    double operator()(const std::vector<double>& th) const {
        ++evals;
        const std::size_t d = family.dim();
        std::vector<double> tf(th.begin(), th.begin() + d);
        std::vector<double> tg(th.begin() + d, th.end());
        const LagrangianState A = relabel(Xa, family.realize(tf), topt);
        const LagrangianState B = relabel(Xb, family.realize(tg), topt);
        return e_dist(A, B);
    }
};

/// Coordinate descent with shrinking steps; spends at most max_evals calls.
double coordinate_descent(const Objective& obj, std::vector<double>& th, double step0,
                          std::size_t max_evals, double fbest) {
    double step = step0;
    while (obj.evals < max_evals && step > 1e-7) {
        bool improved = false;
        for (std::size_t i = 0; i < th.size() && obj.evals + 2 <= max_evals; ++i) {
            for (const double sgn : {+1.0, -1.0}) {
                std::vector<double> cand(th);
                cand[i] += sgn * step;
                const double v = obj(cand);
                if (v < fbest) {
                    fbest = v;
                    th = cand;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return fbest;
}

}  // namespace

double j_upper(const LagrangianState& Xa, const LagrangianState& Xb,
               const RelabelingFamily& family, MetricOptions opt) {
    if (Xa.grid != Xb.grid || Xa.grid != family.grid)
        throw std::invalid_argument("j_upper: grid mismatch");
    TransformOptions topt = opt.transform;
    if (topt.relabel_refine == 0) topt.relabel_refine = 8;  // keep the search affordable

    Objective obj{Xa, Xb, family, topt};
    const std::size_t d2 = 2 * family.dim();

    // identity labels are always in the family
    double best = e_dist(Xa, Xb);

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t restarts = std::max<std::size_t>(1, opt.budget / 1000);
    const std::size_t per = std::max<std::size_t>(50, opt.budget / restarts);

    for (std::size_t rs = 0; rs < restarts && obj.evals < opt.budget; ++rs) {
        std::vector<double> th(d2, 0.0);
        if (rs > 0) {
            for (std::size_t i = 0; i < d2; ++i) {
                const std::size_t k = (i % family.dim());
                const double scale = (k == 0) ? 0.1 : 0.05 / static_cast<double>((k + 1) / 2);
                th[i] = scale * gauss(rng);
            }
        }
        const double f0 = obj(th);
        const double v = coordinate_descent(obj, th, 0.05, std::min(opt.budget, obj.evals + per),
                                            std::min(f0, best));
        best = std::min(best, v);
    }
    return best;
}

namespace {

/// Linear interpolation between states followed by the F-repair: positivity
/// clamps plus re-projection of U_xi onto the compatibility identity.
LagrangianState interpolate_repair(const LagrangianState& A, const LagrangianState& B, double s) {
    const std::size_t n = A.grid.n;
    LagrangianState X;
    X.grid = A.grid;
    X.zeta.resize(n);
    X.U.resize(n);
    X.yxi.resize(n);
    X.Uxi.resize(n);
    X.nu.resize(n);
    X.r.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        X.zeta[j] = (1 - s) * A.zeta[j] + s * B.zeta[j];
        X.U[j] = (1 - s) * A.U[j] + s * B.U[j];
        X.yxi[j] = std::max(0.0, (1 - s) * A.yxi[j] + s * B.yxi[j]);
        X.nu[j] = std::max(0.0, (1 - s) * A.nu[j] + s * B.nu[j]);
        X.r[j] = (1 - s) * A.r[j] + s * B.r[j];
        const double uxi_lin = (1 - s) * A.Uxi[j] + s * B.Uxi[j];
        const double rad = X.yxi[j] * X.nu[j] - X.yxi[j] * X.yxi[j] * X.U[j] * X.U[j] - X.r[j] * X.r[j];
        const double mag = std::sqrt(std::max(rad, 0.0));
        X.Uxi[j] = (uxi_lin < 0.0) ? -mag : mag;
    }
    return X;
}

}  // namespace

double d_upper(const LagrangianState& Xa, const LagrangianState& Xb,
               const RelabelingFamily& family, MetricOptions opt) {
    MetricOptions sub = opt;
    sub.budget = std::max<std::size_t>(200, opt.budget / std::max<std::size_t>(1, opt.chain_length + 1));

    double best = j_upper(Xa, Xb, family, sub);
    for (std::size_t N = 2; N <= opt.chain_length; ++N) {
        double sum = 0.0;
        LagrangianState prev = Xa;
        for (std::size_t k = 1; k <= N; ++k) {
            const double s = static_cast<double>(k) / static_cast<double>(N);
            const LagrangianState next = (k == N) ? Xb : interpolate_repair(Xa, Xb, s);
            sum += j_upper(prev, next, family, sub);
            if (sum >= best) break;  // chain already worse
            prev = next;
        }
        best = std::min(best, sum);
    }
    return best;
}

double lower_bound_functional(const LagrangianState& Xa, const LagrangianState& Xb) {
    if (Xa.grid != Xb.grid) throw std::invalid_argument("lower_bound_functional: grid mismatch");
    double sy = 0.0, sU = 0.0;
    for (std::size_t j = 0; j < Xa.grid.n; ++j) {
        sy = std::max(sy, std::fabs(Xa.zeta[j] - Xb.zeta[j]));
        sU = std::max(sU, std::fabs(Xa.U[j] - Xb.U[j]));
    }
    const double dh = std::fabs(quadrature(Xa.grid, Xa.nu) - quadrature(Xb.grid, Xb.nu));
    const double dR = std::fabs(quadrature(Xa.grid, Xa.r) - quadrature(Xb.grid, Xb.r));
    return sy + sU + dh + dR;
}

double eulerian_distance(const EulerianState& a, const EulerianState& b,
                         const RelabelingFamily& family, MetricOptions opt) {
    const LagrangianState Xa = project(eulerian_to_lagrangian_raw(a, opt.transform), opt.transform);
    const LagrangianState Xb = project(eulerian_to_lagrangian_raw(b, opt.transform), opt.transform);
    return d_upper(Xa, Xb, family, opt);
}

}  // namespace chsim
