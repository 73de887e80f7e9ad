#include <cmath>
#include <set>

#include <doctest.h>

#include "ocorg/errors.hpp"
#include "ocorg/robot.hpp"
#include "ocorg/simulator.hpp"

using namespace ocorg;

namespace {

// Scalar loop x+ = 0.5 x + u + w, u = v (K = 0), y = x, |y| <= 1.
Scenario scalar_scenario(double target, double w_bound, int horizon) {
    PlantModel plant;
    plant.A = Matrix{{0.5}};
    plant.B = Matrix{{1.0}};
    plant.B_w = Matrix{{1.0}};
    plant.C_o = Matrix{{1.0}};
    plant.D = Matrix{{0.0}};
    plant.D_w = Matrix{{0.0}};

    Scenario sc;
    sc.plant = plant;
    sc.cl = make_closed_loop(plant, Matrix{{0.0}});
    sc.Y = HPolytope::box(-1.0, 1.0, 1);
    sc.Ybar = scale(sc.Y, 0.95);
    sc.lambda = 0.9;
    if (w_bound > 0.0) {
        sc.W = SupportSet::mapped_box(Matrix::identity(1), {-w_bound}, {w_bound});
        sc.W_vertices = sc.W.vertices();
        sc.rpi = rpi_outer_approx(sc.cl.A_K * (1.0 / sc.lambda),
                                  plant.B_w * (1.0 / sc.lambda), sc.W, 0.1);
    } else {
        sc.W = SupportSet::zero(1);
        sc.rpi.set = SupportSet::zero(1);
    }
    sc.Sv_bar = tightened_reference_set(sc.cl, sc.Ybar, sc.W, sc.rpi);
    sc.mas = compute_mas_lambda(sc.cl, sc.Y, sc.W, sc.lambda);

    const ClosedLoop cl = sc.cl;
    sc.cost_at = [cl, target](int) {
        return std::make_shared<QuadraticTrackingCost>(Matrix::identity(1), Vector{target},
                                                       cl, 2.0);
    };
    const auto p = steady_cost_params(*sc.cost_at(0));
    sc.gamma = step_size_bound(p.alpha_v, p.l_v);
    sc.disturbance = [w_bound](std::uint64_t seed, int t) {
        return Vector{w_bound > 0.0 ? w_bound * uniform_pm1(seed, 0, t) : 0.0};
    };
    sc.horizon = horizon;
    sc.x0 = {0.0};
    sc.r0 = {0.0};
    return sc;
}

}  // namespace

TEST_CASE("uniform_pm1 is deterministic, bounded, and stream-separated") {
    CHECK(uniform_pm1(1, 2, 3) == uniform_pm1(1, 2, 3));
    CHECK(uniform_pm1(1, 2, 3) != uniform_pm1(2, 2, 3));
    CHECK(uniform_pm1(1, 2, 3) != uniform_pm1(1, 3, 3));
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const double v = uniform_pm1(42, 0, i);
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
        seen.insert(counter_hash(42, 0, i));
    }
    CHECK(seen.size() == 1000);  // no collisions over a short counter run
}

TEST_CASE("sample_support_set respects the box bound and nearly attains it") {
    const SupportSet box =
        SupportSet::mapped_box(Matrix::identity(1), {-0.01}, {0.01});
    double max_abs = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const Vector x = sample_support_set(box, 5, i);
        CHECK(std::fabs(x[0]) <= 0.01 + 1e-15);
        max_abs = std::max(max_abs, std::fabs(x[0]));
    }
    CHECK(max_abs >= 0.0099);
    CHECK(max_abs <= 0.01);
}

TEST_CASE("simulate holds the equilibrium with zero cost and zero disturbance") {
    const Scenario sc = scalar_scenario(0.0, 0.0, 50);
    const SimulationTrace tr = simulate(sc, 0);
    REQUIRE(tr.steps() == 51);
    for (int t = 0; t < tr.steps(); ++t) {
        CHECK(std::fabs(tr.x[t][0]) < 1e-12);
        CHECK(std::fabs(tr.v[t][0]) < 1e-12);
        CHECK(tr.alpha[t] == doctest::Approx(1.0));
        CHECK(tr.cost[t] == doctest::Approx(0.0));
        CHECK(tr.slack[t] < 0.0);
    }
    CHECK(tr.regret.back() == doctest::Approx(0.0));
}

TEST_CASE("simulate converges to a constant admissible target") {
    // Steady target x = 0.6 means v = 0.3, inside Sv_bar = [-0.475, 0.475].
    const Scenario sc = scalar_scenario(0.6, 0.0, 200);
    const SimulationTrace tr = simulate(sc, 0);
    CHECK(tr.v.back()[0] == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(tr.x.back()[0] == doctest::Approx(0.6).epsilon(1e-5));
    // Regret increments die out once converged.
    const int T = tr.steps();
    CHECK(tr.regret[T - 1] - tr.regret[T - 2] < 1e-8);
    // No constraint violations along the way.
    for (double s : tr.slack) CHECK(s <= 1e-9);
    // Tracking error decays monotonically after the initial transient.
    for (int t = 20; t + 1 < T; ++t)
        CHECK(std::fabs(tr.x[t + 1][0] - 0.6) <= std::fabs(tr.x[t][0] - 0.6) + 1e-12);
}

TEST_CASE("simulate saturates at the tightened boundary for an over-ambitious target") {
    // Target x = 2 is outside |y| <= 1; the optimum sits on the Sv_bar boundary.
    const Scenario sc = scalar_scenario(2.0, 0.0, 200);
    const SimulationTrace tr = simulate(sc, 0);
    CHECK(tr.eta.back()[0] == doctest::Approx(0.475).epsilon(1e-6));
    CHECK(tr.v.back()[0] == doctest::Approx(0.475).epsilon(1e-4));
    for (double s : tr.slack) CHECK(s <= 1e-9);
}

TEST_CASE("simulate is deterministic per seed and seed-sensitive") {
    const Scenario sc = scalar_scenario(0.4, 0.03, 100);
    const SimulationTrace a = simulate(sc, 7);
    const SimulationTrace b = simulate(sc, 7);
    const SimulationTrace c = simulate(sc, 8);
    CHECK(trace_to_csv(a) == trace_to_csv(b));
    CHECK(trace_to_csv(a) != trace_to_csv(c));
    // Under disturbance the constraints still hold.
    for (double s : a.slack) CHECK(s <= 1e-9);
    for (double al : a.alpha) CHECK(al > 0.0);
}

TEST_CASE("simulate rejects an infeasible initialization") {
    Scenario sc = scalar_scenario(0.0, 0.0, 10);
    sc.x0 = {5.0};  // (r0, x0 - S_K r0) far outside the admissible set
    CHECK_THROWS_AS(simulate(sc, 0), Infeasible);
    Scenario sc2 = scalar_scenario(0.0, 0.0, 10);
    sc2.r0 = {3.0};  // outside Sv_bar
    CHECK_THROWS_AS(simulate(sc2, 0), Infeasible);
}

TEST_CASE("optimal_steady_reference interior and boundary optima") {
    const Scenario sc = scalar_scenario(0.0, 0.0, 0);
    const QuadraticTrackingCost interior(Matrix::identity(1), {0.6}, sc.cl, 2.0);
    const auto in = optimal_steady_reference(interior, sc.Sv_bar, sc.cl);
    CHECK(in.eta[0] == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(in.theta[0] == doctest::Approx(0.6).epsilon(1e-8));

    const QuadraticTrackingCost clipped(Matrix::identity(1), {2.0}, sc.cl, 2.0);
    const auto cl = optimal_steady_reference(clipped, sc.Sv_bar, sc.cl);
    CHECK(cl.eta[0] == doctest::Approx(0.475).epsilon(1e-8));
}

TEST_CASE("dynamic_regret summarizes a hand-built trace") {
    SimulationTrace tr;
    tr.x = {{0.0}, {0.0}, {0.0}};
    tr.w = {{1.0}, {-2.0}, {0.5}};
    tr.eta = {{0.0}, {1.0}, {0.5}};
    tr.alpha = {1.0, 0.25, 0.75};
    tr.slack = {-0.5, -0.1, -0.9};
    tr.regret = {1.0, 2.5, 3.0};
    const RegretReport rep = dynamic_regret(tr);
    CHECK(rep.regret == doctest::Approx(3.0));
    CHECK(rep.path_length == doctest::Approx(1.0 + 0.5));
    CHECK(rep.disturbance_magnitude == doctest::Approx(1.0 + 2.0));
    CHECK(rep.min_alpha == doctest::Approx(0.25));
    CHECK(rep.max_slack == doctest::Approx(-0.1));
    CHECK_FALSE(rep.negative_regret_flag);
}

TEST_CASE("trace_to_csv emits the documented layout") {
    const Scenario sc = scalar_scenario(0.2, 0.0, 3);
    const SimulationTrace tr = simulate(sc, 0);
    const std::string csv = trace_to_csv(tr);
    CHECK(csv.rfind("t,x1,u1,v1,r1,alpha,y1,eta1,cost,opt_cost,regret\n", 0) == 0);
    // One header plus one row per step.
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == static_cast<std::size_t>(tr.steps()) + 1);
}

TEST_CASE("robot_reference endpoints and spiral shrink") {
    const RobotConfig cfg;
    const auto p0 = robot_reference(cfg, 0);
    CHECK(p0[0] == doctest::Approx(10.0));
    CHECK(p0[1] == doctest::Approx(0.0));
    const auto p600 = robot_reference(cfg, 600);
    CHECK(p600[0] == doctest::Approx(-10.0));
    CHECK(std::fabs(p600[1]) < 1e-9);
    const auto p680 = robot_reference(cfg, 680);
    CHECK(std::hypot(p680[0], p680[1]) == doctest::Approx(9.0));
    // The radius never exceeds the position bound.
    for (int t = 0; t <= 1000; t += 25) {
        const auto p = robot_reference(cfg, t);
        CHECK(std::hypot(p[0], p[1]) <= 10.0 + 1e-12);
    }
}
