#include "ocorg/controller.hpp"

#include <algorithm>
#include <cmath>

#include "ocorg/errors.hpp"

namespace ocorg {

QuadraticTrackingCost::QuadraticTrackingCost(Matrix P_sel, Vector target,
                                             const ClosedLoop& cl, double weight)
    : P_sel_(std::move(P_sel)), target_(std::move(target)), weight_(weight) {
    if (P_sel_.cols() != cl.plant.n())
        throw DimensionMismatch("QuadraticTrackingCost: P_sel col mismatch");
    if (target_.size() != P_sel_.rows())
        throw DimensionMismatch("QuadraticTrackingCost: target size mismatch");
    T_ = P_sel_ * cl.S_K;
}

double QuadraticTrackingCost::evaluate(const Vector&, const Vector& x) const {
    const Vector d = P_sel_ * x - target_;
    return 0.5 * weight_ * dot(d, d);
}

Vector QuadraticTrackingCost::steady_gradient(const Vector& v) const {
    return weight_ * (T_.transpose() * (T_ * v - target_));
}

std::optional<Matrix> QuadraticTrackingCost::steady_hessian() const {
    return weight_ * (T_.transpose() * T_);
}

double QuadraticTrackingCost::steady_value(const Vector& v) const {
    const Vector d = T_ * v - target_;
    return 0.5 * weight_ * dot(d, d);
}

double steady_gradient_consistency(const CostFunction& cost, const ClosedLoop& cl,
                                   const std::vector<Vector>& samples, double fd_step) {
    const Matrix KS = cl.K * cl.S_K;
    auto steady = [&](const Vector& v) {
        const Vector x = cl.S_K * v;
        const Vector u = v + KS * v;
        return cost.evaluate(u, x);
    };
    double worst = 0.0;
    for (const auto& v : samples) {
        const Vector g = cost.steady_gradient(v);
        for (std::size_t i = 0; i < v.size(); ++i) {
            Vector vp = v, vm = v;
            const double h = fd_step * (1.0 + std::fabs(v[i]));
            vp[i] += h;
            vm[i] -= h;
            const double fd = (steady(vp) - steady(vm)) / (2.0 * h);
            const double denom = std::max({std::fabs(g[i]), std::fabs(fd), 1.0});
            worst = std::max(worst, std::fabs(fd - g[i]) / denom);
        }
    }
    return worst;
}

SteadyCostParams steady_cost_params(const CostFunction& cost, const NumericSettings& cfg) {
    const auto hess = cost.steady_hessian();
    if (!hess) throw NotStronglyConvex("steady_cost_params: no Hessian oracle");
    const Vector ev = symmetric_eigenvalues(*hess, cfg);
    const double alpha_v = ev.front();
    const double l_v = ev.back();
    if (alpha_v < 1e-12)
        throw NotStronglyConvex("steady_cost_params: steady cost not strongly convex");
    return {alpha_v, l_v};
}

double step_size_bound(double alpha_v, double l_v) {
    if (!(alpha_v > 0.0) || l_v < alpha_v)
        throw DimensionMismatch("step_size_bound: need 0 < alpha_v <= l_v");
    return 2.0 / (alpha_v + l_v);
}

Vector ogd_step(ControllerState& state, const Vector& grad_prev, const HPolytope& Sv_bar,
                const NumericSettings& cfg) {
    state.r = project(Sv_bar, state.r - state.gamma * grad_prev, cfg);
    return state.r;
}

RgStep rg_step(ControllerState& state, const Vector& r_t, const Vector& x_t,
               const MasResult& mas, const Matrix& S_K) {
    auto member = [&](double alpha) {
        const Vector v = state.v + alpha * (r_t - state.v);
        return mas.member(v, x_t - S_K * v, 1e-9);
    };
    double alpha;
    if (member(1.0)) {
        alpha = 1.0;  // short-circuit, exact
    } else {
        if (!mas.member(state.v, x_t - S_K * state.v, 1e-7))
            throw InfeasibleAtZero("rg_step: alpha = 0 infeasible (invariant breach upstream)");
        double lo = 0.0, hi = 1.0;
        while (hi - lo >= state.eps_alpha) {
            const double mid = 0.5 * (lo + hi);
            if (member(mid))
                lo = mid;
            else
                hi = mid;
        }
        alpha = lo;  // certified-feasible lower endpoint
    }
    state.v = state.v + alpha * (r_t - state.v);
    return {alpha, state.v};
}

Vector control_input(const Vector& v, const Matrix& K, const Vector& x) {
    return v + K * x;
}

}  // namespace ocorg
