#pragma once

#include <vector>

#include "ocorg/control.hpp"
#include "ocorg/polytope.hpp"

namespace ocorg {

/// Outer approximation of the minimal robust positively invariant set of
/// eps+ = A~ eps + B~ w, w in W: the finite sum (+)_{i<s} A~^i B~ W scaled by
/// 1/(1-alpha), where A~^s B~ W is contained in alpha * B~ W.
struct RPIApprox {
    int s = 0;
    double alpha = 0.0;
    SupportSet set;  // multiplier 1/(1-alpha) already applied

    double support(const Vector& c) const { return set.support(c); }
};

RPIApprox rpi_outer_approx(const Matrix& A_tilde, const Matrix& B_tilde, const SupportSet& W,
                           double alpha_max = 0.1,
                           const NumericSettings& cfg = default_settings());

/// Tightened admissible steady-state reference set
///   {v : (C S_K + D) v  in  Ybar (-) D_w W (-) C RPI},
/// as an H-polytope in v-space. Throws EmptyTightening when the disturbance
/// swallows the margin (no interior around 0 left).
HPolytope tightened_reference_set(const ClosedLoop& cl, const HPolytope& Ybar,
                                  const SupportSet& W, const RPIApprox& rpi,
                                  const NumericSettings& cfg = default_settings());

/// Maximal output admissible set over (v, e) for the lambda-contracted error
/// dynamics e+ = (A_K e + B_w w)/lambda with output C e + (C S_K + D) v + D_w w
/// constrained to Y, for all admissible disturbance sequences.
struct MasResult {
    HPolytope polytope;           // over (v, e) in R^(m+n)
    int k_star = 0;               // determination index
    std::size_t rows_raw = 0;     // rows accumulated before the final sweep
    std::vector<Vector> theta;    // per-step disturbance tightening offsets
    Vector theta_inf;             // converged offsets used in the limit rows
    std::size_t m = 0, n = 0;

    bool member(const Vector& v, const Vector& e, double tol) const {
        return contains(polytope, concat(v, e), tol);
    }
};

MasResult compute_mas_lambda(const ClosedLoop& cl, const HPolytope& Y, const SupportSet& W,
                             double lambda, double eps_mas = 1e-6, int k_cap = 500,
                             const NumericSettings& cfg = default_settings());

/// Test oracle: simulates the contracted error dynamics over `horizon` steps
/// with the worst-case disturbance per halfspace chosen greedily from the
/// vertex list of W (valid since the constraints are linear and W is convex).
/// Returns whether the constraints hold through the horizon.
bool mas_brute_force_check(const ClosedLoop& cl, const HPolytope& Y,
                           const std::vector<Vector>& W_vertices, double lambda,
                           const Vector& v, const Vector& e, int horizon);

}  // namespace ocorg
