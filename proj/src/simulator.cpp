#include "ocorg/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ocorg/errors.hpp"

namespace ocorg {

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t z = mix(seed);
    z = mix(z + 0x9e3779b97f4a7c15ULL * (stream + 1));
    z = mix(z + 0x9e3779b97f4a7c15ULL * (counter + 1));
    return z;
}

double uniform_pm1(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const std::uint64_t h = counter_hash(seed, stream, counter) >> 11;  // 53 bits
    return 2.0 * (static_cast<double>(h) * (1.0 / 9007199254740992.0)) - 1.0;
}

Vector sample_support_set(const SupportSet& set, std::uint64_t seed, std::uint64_t t) {
    Vector x(set.dim(), 0.0);
    std::uint64_t stream = 0;
    for (const auto& term : set.terms) {
        Vector b(term.lo.size());
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double u = 0.5 * (uniform_pm1(seed, stream++, t) + 1.0);
            b[j] = term.lo[j] + u * (term.hi[j] - term.lo[j]);
        }
        x = x + term.map * b;
    }
    for (auto& v : x) v *= set.multiplier;
    return x;
}

SimulationTrace simulate(const Scenario& sc, std::uint64_t seed, const NumericSettings& cfg) {
    const Matrix& K = sc.cl.K;
    const Matrix& S_K = sc.cl.S_K;
    const int T = sc.horizon;

    auto offset_at = [&](int t) {
        return sc.measurement_offset ? sc.measurement_offset(seed, t)
                                     : Vector(sc.plant.n(), 0.0);
    };

    // Simulated Eq.(1) state; with measurement noise this is the noisy state
    // and the physical state is x - mu.
    Vector x = sc.x0 + offset_at(0);

    if (!contains(sc.Sv_bar, sc.r0, 1e-9))
        throw Infeasible("simulate: r0 outside the tightened reference set");
    if (!sc.mas.member(sc.r0, x - S_K * sc.r0, 1e-9))
        throw Infeasible("simulate: (r0, x0 - S_K r0) outside the MAS");

    ControllerState cs{sc.r0, sc.r0, sc.gamma, sc.eps_alpha};
    SimulationTrace tr;
    Vector eta_prev;

    for (int t = 0; t <= T; ++t) {
        double alpha;
        if (t == 0) {
            alpha = 1.0;  // v_0 = r_0 by initialization
        } else {
            const auto cost_prev = sc.cost_at(t - 1);
            const Vector grad = cost_prev->steady_gradient(cs.r);
            const Vector r_t = ogd_step(cs, grad, sc.Sv_bar, cfg);
            alpha = rg_step(cs, r_t, x, sc.mas, S_K).alpha;
        }
        const Vector u = control_input(cs.v, K, x);
        const Vector w = sc.disturbance(seed, t);
        const Vector y = sc.plant.C_o * x + sc.plant.D * u + sc.plant.D_w * w;

        const auto cost = sc.cost_at(t);
        const SteadyOptimum opt = optimal_steady_reference(
            *cost, sc.Sv_bar, sc.cl, 1e-10, eta_prev.empty() ? nullptr : &eta_prev, cfg);
        eta_prev = opt.eta;

        const double inst = cost->evaluate(u, x);
        const double best = cost->steady_value(opt.eta);

        double slack = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < sc.Y.num_rows(); ++j)
            slack = std::max(slack, dot(sc.Y.H().row(j), y) - sc.Y.h()[j]);

        tr.x.push_back(x);
        tr.x_true.push_back(x - offset_at(t));
        tr.u.push_back(u);
        tr.v.push_back(cs.v);
        tr.r.push_back(cs.r);
        tr.y.push_back(y);
        tr.w.push_back(w);
        tr.eta.push_back(opt.eta);
        tr.theta.push_back(opt.theta);
        tr.alpha.push_back(alpha);
        tr.cost.push_back(inst);
        tr.opt_cost.push_back(best);
        tr.regret.push_back((tr.regret.empty() ? 0.0 : tr.regret.back()) + inst - best);
        tr.slack.push_back(slack);

        x = sc.plant.A * x + sc.plant.B * u + sc.plant.B_w * w;
    }
    return tr;
}

SteadyOptimum optimal_steady_reference(const CostFunction& cost, const HPolytope& Sv_bar,
                                       const ClosedLoop& cl, double tol,
                                       const Vector* warm_start, const NumericSettings& cfg) {
    const SteadyCostParams p = steady_cost_params(cost, cfg);
    const double step = 2.0 / (p.alpha_v + p.l_v);
    Vector v = warm_start ? *warm_start : project(Sv_bar, Vector(Sv_bar.dim(), 0.0), cfg);
    SteadyOptimum out;
    constexpr int kCap = 1000000;
    int it = 0;
    for (; it < kCap; ++it) {
        const Vector vn = project(Sv_bar, v - step * cost.steady_gradient(v), cfg);
        const double moved = norm2(vn - v);
        v = vn;
        if (moved < tol) break;
    }
    if (it >= kCap) throw IterationCap("optimal_steady_reference: projected gradient cap");
    out.eta = v;
    out.theta = cl.S_K * v;
    out.iterations = it + 1;
    return out;
}

RegretReport dynamic_regret(const SimulationTrace& trace) {
    RegretReport rep;
    const int T = trace.steps();
    if (T == 0) return rep;
    rep.regret = trace.regret.back();
    for (int t = 1; t < T; ++t) rep.path_length += norm2(trace.eta[t] - trace.eta[t - 1]);
    for (int t = 0; t + 1 < T; ++t) rep.disturbance_magnitude += norm2(trace.w[t]);
    rep.min_alpha = *std::min_element(trace.alpha.begin(), trace.alpha.end());
    rep.max_slack = *std::max_element(trace.slack.begin(), trace.slack.end());
    rep.negative_regret_flag = rep.regret < -10.0 * 1e-10 * T;
    return rep;
}

namespace {

void append_num(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

void append_vec(std::string& out, const Vector& v) {
    for (double x : v) {
        out += ',';
        append_num(out, x);
    }
}

}  // namespace

std::string trace_to_csv(const SimulationTrace& trace) {
    std::string out = "t";
    const auto label = [&](const char* base, std::size_t count) {
        for (std::size_t i = 1; i <= count; ++i)
            out += "," + std::string(base) + std::to_string(i);
    };
    if (trace.steps() == 0) return out + "\n";
    label("x", trace.x[0].size());
    label("u", trace.u[0].size());
    label("v", trace.v[0].size());
    label("r", trace.r[0].size());
    out += ",alpha";
    label("y", trace.y[0].size());
    label("eta", trace.eta[0].size());
    out += ",cost,opt_cost,regret\n";
    for (int t = 0; t < trace.steps(); ++t) {
        out += std::to_string(t);
        append_vec(out, trace.x[t]);
        append_vec(out, trace.u[t]);
        append_vec(out, trace.v[t]);
        append_vec(out, trace.r[t]);
        out += ',';
        append_num(out, trace.alpha[t]);
        append_vec(out, trace.y[t]);
        append_vec(out, trace.eta[t]);
        out += ',';
        append_num(out, trace.cost[t]);
        out += ',';
        append_num(out, trace.opt_cost[t]);
        out += ',';
        append_num(out, trace.regret[t]);
        out += '\n';
    }
    return out;
}

}  // namespace ocorg
