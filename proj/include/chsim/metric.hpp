#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "chsim/state.hpp"
#include "chsim/transform.hpp"

namespace chsim {

/// Finite-dimensional search family inside G: trigonometric perturbations of
/// the identity, f(xi) = xi + c0 + sum_k a_k sin(2 pi k xi) + b_k cos(2 pi k xi),
/// with coefficients clamped so f_xi stays positive.
struct RelabelingFamily {
    PeriodicGrid grid;
    std::size_t k_max = 8;
    double min_slope = 0.05;  // realized f keep f_xi >= this

    std::size_t dim() const { return 2 * k_max + 1; }
    Relabeling realize(const std::vector<double>& theta) const;
    /// Scales theta in place so the realized slope bound holds.
    void clamp(std::vector<double>& theta) const;
};

struct MetricOptions {
    std::size_t budget = 5000;  // objective evaluations
    std::uint64_t seed = 12345;
    std::size_t chain_length = 3;
    TransformOptions transform;  // compositions inside the optimizer
};

/// Upper bound of J(X_a, X_b) = inf_{f,g} ||X_a*f - X_b*g||_E by local search
/// over the family; never exceeds e_dist(X_a, X_b).
double j_upper(const LagrangianState& Xa, const LagrangianState& Xb,
               const RelabelingFamily& family, MetricOptions opt = {});

/// Upper bound of the chain metric d: best of j_upper and short repaired
/// chains of linearly interpolated intermediate states.
double d_upper(const LagrangianState& Xa, const LagrangianState& Xb,
               const RelabelingFamily& family, MetricOptions opt = {});

/// ||y_a - y_b||_inf + ||U_a - U_b||_inf + |h_a - h_b| + |R_a - R_b| with
/// R = integral of r; a relabeling-robust lower-bound-type discrepancy.
double lower_bound_functional(const LagrangianState& Xa, const LagrangianState& Xb);

/// d_{D^M} surrogate: d_upper after mapping both states through L = Pi L~.
double eulerian_distance(const EulerianState& a, const EulerianState& b,
                         const RelabelingFamily& family, MetricOptions opt = {});

}  // namespace chsim
