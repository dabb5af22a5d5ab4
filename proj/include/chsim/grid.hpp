#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace chsim {

/// Uniform grid on the unit period: nodes xi_j = j/n, spacing 1/n.
/// n must be even and at least 8 so midpoint refinement is always possible.
struct PeriodicGrid {
    std::size_t n = 0;

    PeriodicGrid() = default;
    explicit PeriodicGrid(std::size_t n_) : n(n_) {
        if (n < 8 || n % 2 != 0) {
            throw std::invalid_argument("PeriodicGrid: n must be even and >= 8");
        }
    }

    double dx() const { return 1.0 / static_cast<double>(n); }
    double node(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(n); }

    std::vector<double> nodes() const {
        std::vector<double> x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = node(j);
        return x;
    }

    bool operator==(const PeriodicGrid& o) const { return n == o.n; }
    bool operator!=(const PeriodicGrid& o) const { return n != o.n; }
};

/// Mean of nodal samples times the period: the trapezoid rule for periodic data.
inline double quadrature(const PeriodicGrid& g, const std::vector<double>& v) {
    if (v.size() != g.n) throw std::invalid_argument("quadrature: size mismatch");
    double s = 0.0;
    for (double a : v) s += a;
    return s * g.dx();
}

/// x reduced to [0,1).
inline double wrap_unit(double x) {
    double f = x - static_cast<long long>(x);
    if (f < 0.0) f += 1.0;
    if (f >= 1.0) f -= 1.0;  // guard against roundoff at the seam
    return f;
}

inline std::size_t wrap_index(std::ptrdiff_t j, std::size_t n) {
    std::ptrdiff_t m = j % static_cast<std::ptrdiff_t>(n);
    if (m < 0) m += static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(m);
}

}  // namespace chsim
