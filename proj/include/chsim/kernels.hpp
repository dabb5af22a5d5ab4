#pragma once

#include <vector>

#include "chsim/state.hpp"

namespace chsim {

/// Nonlocal source terms P, Q of the Lagrangian evolution, with their
/// xi-derivatives obtained from the identities P_xi = Q y_xi and
/// Q_xi = (P - U^2/2) y_xi - nu/2.
struct KernelOutput {
    std::vector<double> P;
    std::vector<double> Q;
    std::vector<double> Pxi;
    std::vector<double> Qxi;
};

/// Direct O(n^2) quadrature of the convolution kernels.
///
/// The eta-integral runs over [0,1] with the wrapped endpoint evaluated at
/// (y(0)+1, w(0)); the signed-exponential integrand has a kink at eta = xi_i,
/// where the node value takes the mean of its one-sided limits (for i = 0 the
/// kink sits on the integration boundary and the one-sided value applies).
/// A closed-form Euler-Maclaurin kink correction restores O(1/n^4) accuracy:
/// plain trapezoid carries a (dx^2/24) w y_xi defect at every node.
KernelOutput compute_pq_direct(const LagrangianState& X);

/// O(n) evaluation via prefix sums of e^{+-y(eta)} w(eta); bitwise-equivalent
/// quadrature to compute_pq_direct up to roundoff. Falls back to the direct
/// path if the exponents are out of range (invalid y).
KernelOutput compute_pq_fast(const LagrangianState& X);

struct EulerianP {
    std::vector<double> P;
    std::vector<double> Px;
};

/// Eulerian nonlocal term. with_measure = true integrates u^2 dz + d(mu)
/// (atoms enter as kernel-weighted point terms); false uses the smooth-case
/// source (2u^2 + ux^2 + rho^2) dz built from the fields.
EulerianP eulerian_p(const EulerianState& s, bool with_measure);

}  // namespace chsim
