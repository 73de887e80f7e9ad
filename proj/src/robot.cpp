#include "ocorg/robot.hpp"

#include <cmath>
#include <numbers>

#include "ocorg/errors.hpp"

namespace ocorg {

std::array<double, 2> robot_reference(const RobotConfig& cfg, int t) {
    const double w0 =
        (cfg.omega0 > 0.0 ? cfg.omega0 : std::numbers::pi / cfg.switch_time) * cfg.speed_scale;
    double ang, radius;
    if (t <= cfg.switch_time) {
        ang = w0 * t;
        radius = cfg.pos_bound;
    } else {
        const int dt = t - cfg.switch_time;
        // angle integrates w0 * (1 + accel*(k - switch)) over k
        ang = w0 * (t + cfg.accel * 0.5 * dt * (dt + 1.0));
        radius = std::max(0.0, cfg.pos_bound - cfg.shrink * dt);
    }
    return {radius * std::cos(ang), radius * std::sin(ang)};
}

Scenario robot_scenario(const RobotConfig& cfg, const NumericSettings& settings) {
    const std::size_t n = 4, m = 2;
    const double tau = cfg.tau;

    PlantModel plant;
    plant.A = Matrix{{1, 0, tau, 0}, {0, 1, 0, tau}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    plant.B = Matrix{{0, 0}, {0, 0}, {tau, 0}, {0, tau}};
    plant.B_w = Matrix(n, 2 * n);  // [I 0]
    for (std::size_t i = 0; i < n; ++i) plant.B_w(i, i) = 1.0;
    plant.C_o = Matrix(n + m, n);  // [I; 0]
    for (std::size_t i = 0; i < n; ++i) plant.C_o(i, i) = 1.0;
    plant.D = Matrix(n + m, m);  // [0; I]
    for (std::size_t i = 0; i < m; ++i) plant.D(n + i, i) = 1.0;
    plant.D_w = Matrix(n + m, 2 * n);  // [0 -I; 0 0]
    for (std::size_t i = 0; i < n; ++i) plant.D_w(i, n + i) = -1.0;

    const auto lqr = dare_lqr(plant.A, plant.B, 100.0 * Matrix::identity(n),
                              Matrix::identity(m), settings);

    Scenario sc;
    sc.plant = plant;
    sc.cl = make_closed_loop(plant, lqr.K, settings);
    sc.lambda = cfg.lambda;
    sc.eps_alpha = cfg.eps_alpha;
    sc.eps_mas = cfg.eps_mas;
    sc.horizon = cfg.horizon;
    sc.x0 = Vector(n, 0.0);
    sc.r0 = Vector(m, 0.0);

    sc.Y = HPolytope::box({-cfg.pos_bound, -cfg.pos_bound, -cfg.vel_bound, -cfg.vel_bound,
                           -cfg.input_bound, -cfg.input_bound},
                          {cfg.pos_bound, cfg.pos_bound, cfg.vel_bound, cfg.vel_bound,
                           cfg.input_bound, cfg.input_bound});
    sc.Ybar = scale(sc.Y, cfg.ybar_factor);

    // W = [I; 0] M  (+)  [-A_K; I] M with M the measurement-error box.
    const double nb = cfg.noise_bound * cfg.noise_scale;
    Matrix top(2 * n, n), bottom(2 * n, n);
    for (std::size_t i = 0; i < n; ++i) {
        top(i, i) = 1.0;
        bottom(n + i, i) = 1.0;
        for (std::size_t j = 0; j < n; ++j) bottom(i, j) = -sc.cl.A_K(i, j);
    }
    sc.W.terms.push_back({top, Vector(n, -nb), Vector(n, nb)});
    sc.W.terms.push_back({bottom, Vector(n, -nb), Vector(n, nb)});
    sc.W_vertices = sc.W.vertices();

    const Matrix A_tilde = sc.cl.A_K * (1.0 / cfg.lambda);
    const Matrix Bw_tilde = plant.B_w * (1.0 / cfg.lambda);
    sc.rpi = rpi_outer_approx(A_tilde, Bw_tilde, sc.W, cfg.rpi_alpha_max, settings);
    sc.Sv_bar = tightened_reference_set(sc.cl, sc.Ybar, sc.W, sc.rpi, settings);
    sc.mas = compute_mas_lambda(sc.cl, sc.Y, sc.W, cfg.lambda, cfg.eps_mas, cfg.mas_k_cap,
                                settings);

    Matrix P_sel(2, n);  // position selector
    P_sel(0, 0) = 1.0;
    P_sel(1, 1) = 1.0;
    const ClosedLoop cl = sc.cl;
    const double weight = cfg.cost_weight;
    const RobotConfig traj = cfg;
    sc.cost_at = [P_sel, cl, weight, traj](int t) {
        const auto ref = robot_reference(traj, t);
        return std::make_shared<QuadraticTrackingCost>(P_sel, Vector{ref[0], ref[1]}, cl,
                                                       weight);
    };

    if (cfg.gamma > 0.0) {
        sc.gamma = cfg.gamma;
    } else {
        const auto params = steady_cost_params(*sc.cost_at(0), settings);
        sc.gamma = step_size_bound(params.alpha_v, params.l_v);
    }

    const Matrix A_K = sc.cl.A_K;
    auto mu = [nb, n](std::uint64_t seed, int t) {
        Vector out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = nb * uniform_pm1(seed, i, static_cast<std::uint64_t>(t));
        return out;
    };
    sc.measurement_offset = mu;
    sc.disturbance = [mu, A_K](std::uint64_t seed, int t) {
        return concat(mu(seed, t + 1) - A_K * mu(seed, t), mu(seed, t));
    };
    return sc;
}

}  // namespace ocorg
