#include "doctest.h"

#include <cmath>

#include "chsim/metric.hpp"
#include "chsim/scenarios.hpp"
#include "test_util.hpp"

using namespace chsim;
using namespace chsim::testutil;

namespace {

Relabeling family_member(const RelabelingFamily& fam, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> th(fam.dim(), 0.0);
    th[0] = 0.05 * unif(rng);
    for (std::size_t k = 1; k <= fam.k_max; ++k) {
        th[2 * k - 1] = 0.02 * unif(rng) / static_cast<double>(k);
        th[2 * k] = 0.02 * unif(rng) / static_cast<double>(k);
    }
    return fam.realize(th);
}

}  // namespace

TEST_CASE("family members are valid relabelings") {
    RelabelingFamily fam{PeriodicGrid(128)};
    for (unsigned s = 0; s < 6; ++s) {
        auto f = family_member(fam, s);
        CHECK(f.valid());
    }
    // extreme coefficients get clamped into G
    std::vector<double> wild(fam.dim(), 1.0);
    auto f = fam.realize(wild);
    CHECK(f.valid());
}

TEST_CASE("j_upper: zero on identical states, bounded by the E-distance") {
    auto X = random_state(128, 2, 0.05);
    RelabelingFamily fam{X.grid};
    MetricOptions opt;
    opt.budget = 600;  // identity evaluation only matters here
    CHECK(j_upper(X, X, fam, opt) == 0.0);

    for (unsigned s = 0; s < 5; ++s) {
        auto Y = random_state(128, 100 + s, 0.05);
        CHECK(j_upper(X, Y, fam, opt) <= e_dist(X, Y) + 1e-14);
    }
}

TEST_CASE("j_upper nearly recovers a relabeled copy") {
    auto X = random_state(128, 31, 0.05);
    RelabelingFamily fam{X.grid};
    auto f = family_member(fam, 7);
    auto Xf = relabel(X, f);
    const double raw = e_dist(X, Xf);
    MetricOptions opt;
    opt.budget = 6000;
    const double j = j_upper(X, Xf, fam, opt);
    CHECK(j < 0.05 * raw);  // optimizer must close most of the label gap
}

TEST_CASE("d_upper never exceeds j_upper and both vanish on equal inputs") {
    auto X = random_state(128, 41, 0.05);
    auto Y = random_state(128, 42, 0.05);
    RelabelingFamily fam{X.grid};
    MetricOptions opt;
    opt.budget = 2000;
    CHECK(d_upper(X, X, fam, opt) == 0.0);
    CHECK(d_upper(X, Y, fam, opt) <= j_upper(X, Y, fam, opt) + 1e-14);
}

TEST_CASE("lower bound functional: zero on equal states, shift-dominated otherwise") {
    auto X = random_state(128, 51, 0.05);
    CHECK(lower_bound_functional(X, X) == 0.0);

    auto Y = X;
    for (auto& z : Y.zeta) z += 0.03;  // pure centering offset in y
    const double lb = lower_bound_functional(X, Y);
    CHECK(lb == doctest::Approx(0.03).epsilon(1e-12));

    // relabeled copies keep h and R = integral r unchanged
    RelabelingFamily fam{X.grid};
    auto f = family_member(fam, 3);
    auto Xf = relabel(X, f);
    const double dh = std::fabs(quadrature(X.grid, X.nu) - quadrature(Xf.grid, Xf.nu));
    const double dR = std::fabs(quadrature(X.grid, X.r) - quadrature(Xf.grid, Xf.r));
    CHECK(dh < 1e-10);
    CHECK(dR < 1e-10);
}

TEST_CASE("d_upper is insensitive to relabeling both arguments") {
    auto X = random_state(128, 61, 0.04);
    auto Y = random_state(128, 62, 0.04);
    RelabelingFamily fam{X.grid};
    MetricOptions opt;
    opt.budget = 4000;
    const double base = d_upper(X, Y, fam, opt);
    auto f = family_member(fam, 11);
    auto g = family_member(fam, 12);
    const double moved = d_upper(relabel(X, f), relabel(Y, g), fam, opt);
    CHECK(std::fabs(moved - base) < 0.2 * base + 1e-3);
}

TEST_CASE("eulerian distance: zero on identical states, shrinks along H1 convergence") {
    PeriodicGrid g(128);
    TrigSeries u, rho;
    u.c.assign(2, 0.0);
    u.c[1] = std::complex<double>(0.1, -0.05);
    rho.c.assign(1, 0.0);
    rho.c[0] = 0.4;
    auto s = eulerian_from_series(g, u, rho);
    RelabelingFamily fam{g};
    MetricOptions opt;
    opt.budget = 800;
    CHECK(eulerian_distance(s, s, fam, opt) < 1e-12);

    // u_n = u + sin(2 pi x)/n converging in H1: the distance must go to 0
    double prev = 1e300;
    for (double amp : {4e-2, 1e-2, 2.5e-3}) {
        TrigSeries un = u;
        un.c[1] += std::complex<double>(0.0, -0.5 * amp);
        auto sn = eulerian_from_series(g, un, rho);
        const double d = eulerian_distance(s, sn, fam, opt);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 2e-2);
}
