#pragma once

#include <memory>
#include <optional>

#include "ocorg/control.hpp"
#include "ocorg/polytope.hpp"
#include "ocorg/set_computation.hpp"

namespace ocorg {

/// Time-varying stage cost L(u, x) together with the induced steady-state cost
/// L^s(v) = L(v + K S_K v, S_K v) used by the online gradient step.
class CostFunction {
  public:
    virtual ~CostFunction() = default;
    virtual double evaluate(const Vector& u, const Vector& x) const = 0;
    virtual Vector steady_gradient(const Vector& v) const = 0;
    virtual std::optional<Matrix> steady_hessian() const { return std::nullopt; }
    virtual double steady_value(const Vector& v) const = 0;
};

/// L(u, x) = (weight/2) ||P_sel x - target||^2. The robot tracking problem of
/// the case study uses weight 2, matching its published step size.
class QuadraticTrackingCost : public CostFunction {
  public:
    QuadraticTrackingCost(Matrix P_sel, Vector target, const ClosedLoop& cl,
                          double weight = 1.0);

    double evaluate(const Vector& u, const Vector& x) const override;
    Vector steady_gradient(const Vector& v) const override;
    std::optional<Matrix> steady_hessian() const override;
    double steady_value(const Vector& v) const override;

    const Vector& target() const { return target_; }

  private:
    Matrix P_sel_;
    Matrix T_;  // P_sel * S_K
    Vector target_;
    double weight_;
};

/// Checks the analytic steady gradient against central finite differences of
/// v -> L(v + K S_K v, S_K v). Returns the worst relative error over samples.
double steady_gradient_consistency(const CostFunction& cost, const ClosedLoop& cl,
                                   const std::vector<Vector>& samples, double fd_step = 1e-6);

/// Strong-convexity and smoothness constants of the steady cost: the extreme
/// eigenvalues of its Hessian. Throws NotStronglyConvex when alpha_v < 1e-12.
struct SteadyCostParams {
    double alpha_v;
    double l_v;
};
SteadyCostParams steady_cost_params(const CostFunction& cost,
                                    const NumericSettings& cfg = default_settings());

/// Largest admissible OGD step size 2/(alpha_v + l_v).
double step_size_bound(double alpha_v, double l_v);

struct ControllerState {
    Vector r;  // OGD reference, kept in Sv_bar by projection
    Vector v;  // governed reference
    double gamma = 1.0;
    double eps_alpha = 1e-6;
};

/// One projected online-gradient step: r <- Pi_{Sv_bar}(r - gamma * grad_prev).
Vector ogd_step(ControllerState& state, const Vector& grad_prev, const HPolytope& Sv_bar,
                const NumericSettings& cfg = default_settings());

/// Reference-governor line search: the largest alpha in [0,1] (up to eps_alpha,
/// certified-feasible lower bisection endpoint) such that
/// (v(alpha), x - S_K v(alpha)) stays in the MAS, v(alpha) on the segment from
/// the previous v to r. Throws InfeasibleAtZero when even alpha = 0 fails,
/// which signals an upstream invariant breach.
struct RgStep {
    double alpha;
    Vector v;
};
RgStep rg_step(ControllerState& state, const Vector& r_t, const Vector& x_t,
               const MasResult& mas, const Matrix& S_K);

/// u = v + K x.
Vector control_input(const Vector& v, const Matrix& K, const Vector& x);

}  // namespace ocorg
