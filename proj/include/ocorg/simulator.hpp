#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "ocorg/controller.hpp"

namespace ocorg {

// Counter-based deterministic noise: (seed, stream, counter) -> value.
// Stateless, so traces are reproducible under partial re-simulation.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);
double uniform_pm1(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// Uniform sample from a SupportSet's box decomposition.
Vector sample_support_set(const SupportSet& set, std::uint64_t seed, std::uint64_t t);

/// Everything a closed-loop run needs. The cost schedule and disturbance maps
/// are pure functions of (seed, t), keeping runs deterministic per seed.
struct Scenario {
    PlantModel plant;
    ClosedLoop cl;
    HPolytope Y;
    HPolytope Ybar;
    HPolytope Sv_bar;
    SupportSet W;
    std::vector<Vector> W_vertices;
    RPIApprox rpi;
    MasResult mas;
    std::function<std::shared_ptr<const CostFunction>(int t)> cost_at;
    std::function<Vector(std::uint64_t seed, int t)> disturbance;
    // When set, the simulated Eq.(1) state is the noisy (controller-facing)
    // state and the physical state is recovered as x - offset(t).
    std::function<Vector(std::uint64_t seed, int t)> measurement_offset;
    int horizon = 0;
    Vector x0;  // physical initial state
    Vector r0;
    double lambda = 0.99;
    double gamma = 1.0;
    double eps_alpha = 1e-6;
    double eps_mas = 1e-6;
};

struct SimulationTrace {
    std::vector<Vector> x;       // simulated (controller-facing) state
    std::vector<Vector> x_true;  // physical state (equal to x without noise)
    std::vector<Vector> u, v, r, y, w, eta, theta;
    std::vector<double> alpha, cost, opt_cost, regret, slack;
    int steps() const { return static_cast<int>(x.size()); }
};

/// Runs Algorithm-style closed loop: OGD step, reference governor, control
/// input, plant update, with the per-step optimal steady state and regret
/// accounting recorded. Deterministic for a fixed seed. Checks the feasible
/// initialization assumption before starting.
SimulationTrace simulate(const Scenario& scenario, std::uint64_t seed,
                         const NumericSettings& cfg = default_settings());

struct SteadyOptimum {
    Vector eta;
    Vector theta;
    int iterations = 0;
};

/// eta = argmin over Sv_bar of the steady cost, by projected gradient descent
/// with step 2/(alpha_v + l_v); theta = S_K eta.
SteadyOptimum optimal_steady_reference(const CostFunction& cost, const HPolytope& Sv_bar,
                                       const ClosedLoop& cl, double tol = 1e-10,
                                       const Vector* warm_start = nullptr,
                                       const NumericSettings& cfg = default_settings());

struct RegretReport {
    double regret = 0.0;
    double path_length = 0.0;            // sum ||eta_t - eta_{t-1}||
    double disturbance_magnitude = 0.0;  // sum ||w_t||
    double min_alpha = 1.0;
    double max_slack = 0.0;  // max over t of max_j (H_Y y_t - h_Y)_j
    bool negative_regret_flag = false;
};

RegretReport dynamic_regret(const SimulationTrace& trace);

/// Trace CSV with 17-significant-digit floats; byte-identical across reruns.
std::string trace_to_csv(const SimulationTrace& trace);

}  // namespace ocorg
