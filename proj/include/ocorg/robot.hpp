#pragma once

#include <array>

#include "ocorg/simulator.hpp"

namespace ocorg {

/// Planar double-integrator tracking scenario with measurement noise folded
/// into the disturbance channel. All fields are configuration; defaults
/// reproduce the shipped case study.
struct RobotConfig {
    double tau = 0.1;
    double pos_bound = 10.0;
    double vel_bound = 1.0;
    double input_bound = 2.0;
    double noise_bound = 0.01;   // ||mu||_inf bound on the measurement error
    double noise_scale = 1.0;    // multiplies noise_bound (set and sampler)
    double lambda = 0.99;
    double gamma = 0.0;          // <= 0 means auto: step_size_bound
    double ybar_factor = 0.95;
    double eps_alpha = 1e-6;
    double eps_mas = 1e-6;
    double rpi_alpha_max = 0.1;
    int mas_k_cap = 500;
    int horizon = 1000;
    double cost_weight = 2.0;    // tracking cost ||p - p_ref||^2

    // Reference trajectory: half circle of radius 10 over `switch_time` steps,
    // then angular rate and radius change linearly in time.
    double omega0 = 0.0;         // <= 0 means pi / switch_time
    int switch_time = 600;
    double accel = 1.0 / 400.0;  // angular-rate growth per step after the switch
    double shrink = 1.0 / 80.0;  // radius decrease per step after the switch
    double speed_scale = 1.0;    // multiplies the angular rate throughout
};

/// Reference position p_ref(t).
std::array<double, 2> robot_reference(const RobotConfig& cfg, int t);

/// Builds the full scenario: plant stacking, LQR gain, disturbance set from
/// the measurement-noise reformulation, RPI/tightening/MAS computation, cost
/// schedule, and the counter-based noise sampler.
Scenario robot_scenario(const RobotConfig& cfg = RobotConfig{},
                        const NumericSettings& settings = default_settings());

}  // namespace ocorg
