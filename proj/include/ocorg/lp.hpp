#pragma once

#include "ocorg/matrix.hpp"

namespace ocorg {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Vector optimizer;    // valid when status == Optimal and requested
    double value = 0.0;  // max c'x when Optimal
};

/// Maximizes c'x over {x : Hx <= h}. Deterministic (Bland's anti-cycling rule);
/// throws IterationCap past 10*(q+d)^2 simplex pivots.
///
/// The simplex runs on the standard-form dual (min h'y, H'y = c, y >= 0), which
/// keeps the tableau at (d+2)x(q+2) for the many-constraint/low-dimension LPs
/// this library produces. Set want_optimizer = false to skip recovering a
/// primal maximizer when only the value is needed.
LPResult lp_solve(const Vector& c, const Matrix& H, const Vector& h,
                  bool want_optimizer = true,
                  const NumericSettings& cfg = default_settings());

}  // namespace ocorg
