// Command-line front end: set computation with caching, seeded simulation
// runs, plot-data export, and an invariant check suite over a JSON run config.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ocorg/errors.hpp"
#include "ocorg/robot.hpp"
#include "ocorg/serialization.hpp"
#include "ocorg/simulator.hpp"

namespace fs = std::filesystem;
using ocorg::json;

namespace {

constexpr const char* kConfigSchema = "ocorg-run-1";

struct RunConfig {
    std::string scenario = "robot";
    json custom;  // inline system description when scenario == "custom"
    int horizon = 1000;
    std::vector<std::uint64_t> seeds{0};
    double lambda = 0.99;
    double gamma = 0.0;  // 0 means "auto"
    double eps_alpha = 1e-6;
    double eps_mas = 1e-6;
    double ybar_factor = 0.95;
    double noise_scale = 1.0;
    double rpi_alpha_max = 0.1;
    int mas_k_cap = 500;
    // Robot trajectory shape.
    int switch_time = 600;
    double accel = 1.0 / 400.0;
    double shrink = 1.0 / 80.0;
    double speed_scale = 1.0;
    double omega0 = 0.0;
};

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;  // all defaults = shipped robot case study
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j = json::parse(in);
    if (j.value("schema", kConfigSchema) != kConfigSchema)
        throw std::runtime_error("unsupported config schema: " +
                                 j.value("schema", std::string("<missing>")));
    cfg.scenario = j.value("scenario", cfg.scenario);
    if (j.contains("custom")) cfg.custom = j.at("custom");
    cfg.horizon = j.value("horizon", cfg.horizon);
    if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    cfg.lambda = j.value("lambda", cfg.lambda);
    if (j.contains("gamma")) {
        if (j.at("gamma").is_string()) {
            if (j.at("gamma") != "auto") throw std::runtime_error("gamma: number or \"auto\"");
            cfg.gamma = 0.0;
        } else {
            cfg.gamma = j.at("gamma").get<double>();
        }
    }
    cfg.eps_alpha = j.value("eps_alpha", cfg.eps_alpha);
    cfg.eps_mas = j.value("eps_mas", cfg.eps_mas);
    cfg.ybar_factor = j.value("ybar_factor", cfg.ybar_factor);
    cfg.noise_scale = j.value("noise_scale", cfg.noise_scale);
    cfg.rpi_alpha_max = j.value("rpi_alpha_max", cfg.rpi_alpha_max);
    cfg.mas_k_cap = j.value("mas_k_cap", cfg.mas_k_cap);
    if (j.contains("trajectory")) {
        const json& t = j.at("trajectory");
        cfg.switch_time = t.value("switch_time", cfg.switch_time);
        cfg.accel = t.value("accel", cfg.accel);
        cfg.shrink = t.value("shrink", cfg.shrink);
        cfg.speed_scale = t.value("speed_scale", cfg.speed_scale);
        cfg.omega0 = t.value("omega0", cfg.omega0);
    }
    if (!(cfg.lambda > 0.0 && cfg.lambda < 1.0))
        throw std::runtime_error("lambda must lie in (0,1)");
    if (cfg.horizon < 1) throw std::runtime_error("horizon must be >= 1");
    if (cfg.seeds.empty()) throw std::runtime_error("seeds must be nonempty");
    return cfg;
}

ocorg::RobotConfig to_robot_config(const RunConfig& cfg) {
    ocorg::RobotConfig rc;
    rc.lambda = cfg.lambda;
    rc.gamma = cfg.gamma;
    rc.ybar_factor = cfg.ybar_factor;
    rc.eps_alpha = cfg.eps_alpha;
    rc.eps_mas = cfg.eps_mas;
    rc.rpi_alpha_max = cfg.rpi_alpha_max;
    rc.mas_k_cap = cfg.mas_k_cap;
    rc.horizon = cfg.horizon;
    rc.noise_scale = cfg.noise_scale;
    rc.switch_time = cfg.switch_time;
    rc.accel = cfg.accel;
    rc.shrink = cfg.shrink;
    rc.speed_scale = cfg.speed_scale;
    rc.omega0 = cfg.omega0;
    return rc;
}

// Inline "custom" scenario: plant matrices, gain (or LQR weights), output box,
// disturbance terms, and a constant quadratic tracking cost.
ocorg::Scenario custom_scenario(const RunConfig& cfg) {
    const json& c = cfg.custom;
    if (c.is_null()) throw std::runtime_error("scenario \"custom\" requires a custom block");
    ocorg::PlantModel plant;
    plant.A = ocorg::matrix_from_json(c.at("A"));
    plant.B = ocorg::matrix_from_json(c.at("B"));
    plant.B_w = ocorg::matrix_from_json(c.at("B_w"));
    plant.C_o = ocorg::matrix_from_json(c.at("C_o"));
    plant.D = ocorg::matrix_from_json(c.at("D"));
    plant.D_w = ocorg::matrix_from_json(c.at("D_w"));

    ocorg::Matrix K;
    if (c.contains("K")) {
        K = ocorg::matrix_from_json(c.at("K"));
    } else {
        const auto lqr = ocorg::dare_lqr(plant.A, plant.B,
                                         ocorg::matrix_from_json(c.at("Q")),
                                         ocorg::matrix_from_json(c.at("R")));
        K = lqr.K;
    }

    ocorg::Scenario sc;
    sc.plant = plant;
    sc.cl = ocorg::make_closed_loop(plant, K);
    sc.lambda = cfg.lambda;
    sc.eps_alpha = cfg.eps_alpha;
    sc.eps_mas = cfg.eps_mas;
    sc.horizon = cfg.horizon;
    sc.Y = ocorg::hpolytope_from_json(c.at("Y"));
    sc.Ybar = ocorg::scale(sc.Y, cfg.ybar_factor);
    if (c.contains("W")) {
        sc.W = ocorg::support_set_from_json(c.at("W"));
        sc.W.multiplier *= cfg.noise_scale;
        sc.W_vertices = sc.W.vertices();
        sc.rpi = ocorg::rpi_outer_approx(sc.cl.A_K * (1.0 / cfg.lambda),
                                         plant.B_w * (1.0 / cfg.lambda), sc.W,
                                         cfg.rpi_alpha_max);
    } else {
        sc.W = ocorg::SupportSet::zero(plant.o());
        sc.rpi.set = ocorg::SupportSet::zero(plant.n());
    }
    sc.Sv_bar = ocorg::tightened_reference_set(sc.cl, sc.Ybar, sc.W, sc.rpi);
    sc.mas = ocorg::compute_mas_lambda(sc.cl, sc.Y, sc.W, cfg.lambda, cfg.eps_mas,
                                       cfg.mas_k_cap);

    const ocorg::Matrix P_sel = c.contains("cost_P_sel")
                                    ? ocorg::matrix_from_json(c.at("cost_P_sel"))
                                    : ocorg::Matrix::identity(plant.n());
    const ocorg::Vector target = c.contains("cost_target")
                                     ? c.at("cost_target").get<ocorg::Vector>()
                                     : ocorg::Vector(P_sel.rows(), 0.0);
    const double weight = c.value("cost_weight", 1.0);
    const ocorg::ClosedLoop cl = sc.cl;
    sc.cost_at = [P_sel, target, cl, weight](int) {
        return std::make_shared<ocorg::QuadraticTrackingCost>(P_sel, target, cl, weight);
    };
    if (cfg.gamma > 0.0) {
        sc.gamma = cfg.gamma;
    } else {
        const auto p = ocorg::steady_cost_params(*sc.cost_at(0));
        sc.gamma = ocorg::step_size_bound(p.alpha_v, p.l_v);
    }
    const ocorg::SupportSet W = sc.W;
    const bool noisy = !W.terms.empty();
    sc.disturbance = [W, noisy, o = plant.o()](std::uint64_t seed, int t) {
        return noisy ? ocorg::sample_support_set(W, seed, t) : ocorg::Vector(o, 0.0);
    };
    sc.x0 = c.contains("x0") ? c.at("x0").get<ocorg::Vector>()
                             : ocorg::Vector(plant.n(), 0.0);
    sc.r0 = c.contains("r0") ? c.at("r0").get<ocorg::Vector>()
                             : ocorg::Vector(plant.m(), 0.0);
    return sc;
}

ocorg::Scenario build_scenario(const RunConfig& cfg) {
    if (cfg.scenario == "robot") return ocorg::robot_scenario(to_robot_config(cfg));
    if (cfg.scenario == "custom") return custom_scenario(cfg);
    throw std::runtime_error("unknown scenario: " + cfg.scenario);
}

// Cache key: hash of every mathematical input that shapes the computed sets.
std::string sets_hash(const RunConfig& cfg, const ocorg::Scenario& sc) {
    json j{{"A", ocorg::to_json(sc.plant.A)},
           {"B", ocorg::to_json(sc.plant.B)},
           {"B_w", ocorg::to_json(sc.plant.B_w)},
           {"C_o", ocorg::to_json(sc.plant.C_o)},
           {"D", ocorg::to_json(sc.plant.D)},
           {"D_w", ocorg::to_json(sc.plant.D_w)},
           {"K", ocorg::to_json(sc.cl.K)},
           {"Y", ocorg::to_json(sc.Y)},
           {"W", ocorg::to_json(sc.W)},
           {"lambda", cfg.lambda},
           {"eps_mas", cfg.eps_mas},
           {"ybar_factor", cfg.ybar_factor},
           {"rpi_alpha_max", cfg.rpi_alpha_max}};
    return ocorg::content_hash(j.dump());
}

json resolved_config_json(const RunConfig& cfg, const ocorg::Scenario& sc) {
    return json{{"schema", kConfigSchema},
                {"scenario", cfg.scenario},
                {"horizon", cfg.horizon},
                {"seeds", cfg.seeds},
                {"lambda", cfg.lambda},
                {"gamma", sc.gamma},  // resolved value, even when "auto"
                {"gamma_mode", cfg.gamma > 0.0 ? "explicit" : "auto"},
                {"eps_alpha", cfg.eps_alpha},
                {"eps_mas", cfg.eps_mas},
                {"ybar_factor", cfg.ybar_factor},
                {"noise_scale", cfg.noise_scale},
                {"rpi_alpha_max", cfg.rpi_alpha_max},
                {"mas_k_cap", cfg.mas_k_cap},
                {"trajectory",
                 json{{"switch_time", cfg.switch_time},
                      {"accel", cfg.accel},
                      {"shrink", cfg.shrink},
                      {"speed_scale", cfg.speed_scale},
                      {"omega0", cfg.omega0}}}};
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int cmd_compute_sets(const RunConfig& cfg, const fs::path& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    const ocorg::Scenario sc = build_scenario(cfg);
    const auto t1 = std::chrono::steady_clock::now();
    const std::string hash = sets_hash(cfg, sc);
    const fs::path dir = out_dir / "sets" / hash;
    if (fs::exists(dir / "manifest.json")) {
        std::printf("cache hit: %s\n", dir.string().c_str());
        return 0;
    }
    fs::create_directories(dir);
    write_file(dir / "mas.json", ocorg::mas_to_json(sc.mas, cfg.lambda, cfg.eps_mas).dump(2));
    write_file(dir / "rpi.json", ocorg::rpi_to_json(sc.rpi).dump(2));
    write_file(dir / "sv_bar.json", ocorg::to_json(sc.Sv_bar).dump(2));
    const json manifest{
        {"hash", hash},
        {"config", resolved_config_json(cfg, sc)},
        {"mas_k_star", sc.mas.k_star},
        {"mas_rows_raw", sc.mas.rows_raw},
        {"mas_rows", sc.mas.polytope.num_rows()},
        {"rpi_s", sc.rpi.s},
        {"rpi_alpha", sc.rpi.alpha},
        {"sv_bar_rows", sc.Sv_bar.num_rows()},
        {"compute_seconds", std::chrono::duration<double>(t1 - t0).count()}};
    write_file(dir / "manifest.json", manifest.dump(2));
    std::printf("sets written: %s (k* = %d, %zu rows)\n", dir.string().c_str(),
                sc.mas.k_star, sc.mas.polytope.num_rows());
    return 0;
}

int cmd_simulate(const RunConfig& cfg, const fs::path& out_dir) {
    const ocorg::Scenario sc = build_scenario(cfg);
    fs::create_directories(out_dir);
    json runs = json::array();
    bool any_failed = false;
    for (const std::uint64_t seed : cfg.seeds) {
        json entry{{"seed", seed}};
        try {
            const ocorg::SimulationTrace tr = ocorg::simulate(sc, seed);
            const ocorg::RegretReport rep = ocorg::dynamic_regret(tr);
            const fs::path csv = out_dir / ("trace_seed" + std::to_string(seed) + ".csv");
            write_file(csv, ocorg::trace_to_csv(tr));
            entry["trace"] = csv.filename().string();
            entry["regret"] = rep.regret;
            entry["path_length"] = rep.path_length;
            entry["disturbance_magnitude"] = rep.disturbance_magnitude;
            entry["min_alpha"] = rep.min_alpha;
            entry["max_slack"] = rep.max_slack;
        } catch (const std::exception& e) {
            // Per-seed aborts are recorded without failing the batch.
            entry["error"] = e.what();
            any_failed = true;
        }
        runs.push_back(entry);
    }
    const json report{{"config", resolved_config_json(cfg, sc)},
                      {"sets_hash", sets_hash(cfg, sc)},
                      {"runs", runs}};
    write_file(out_dir / "report.json", report.dump(2));
    std::printf("report written: %s (%zu seed(s)%s)\n",
                (out_dir / "report.json").string().c_str(), cfg.seeds.size(),
                any_failed ? ", with aborts" : "");
    return any_failed ? 1 : 0;
}

int cmd_plot_data(const RunConfig& cfg, const fs::path& out_dir) {
    const ocorg::Scenario sc = build_scenario(cfg);
    fs::create_directories(out_dir);
    const int directions = 128;

    // Output constraint set in the position plane (first two output coords).
    write_file(out_dir / "y_position.csv",
               ocorg::polygon_csv(ocorg::project_2d(sc.Y, 0, 1, directions)));

    // Admissible steady states S_K Sv_bar, position coordinates.
    write_file(out_dir / "sv_image_position.csv",
               ocorg::polygon_csv(ocorg::project_image_2d(sc.Sv_bar, sc.cl.S_K, 0, 1,
                                                          directions)));

    // MAS e-block through v = 0, projected onto the position-error plane.
    const ocorg::HPolytope& mas = sc.mas.polytope;
    ocorg::HPolytope e_block;
    for (std::size_t i = 0; i < mas.num_rows(); ++i) {
        ocorg::Vector row(sc.mas.n);
        double nrm = 0.0;
        for (std::size_t j = 0; j < sc.mas.n; ++j) {
            row[j] = mas.H()(i, sc.mas.m + j);
            nrm += row[j] * row[j];
        }
        if (nrm < 1e-20) continue;  // v-only limit rows vanish at v = 0
        e_block.add_row(row, mas.h()[i]);
    }
    write_file(out_dir / "mas_e_position.csv",
               ocorg::polygon_csv(ocorg::project_2d(e_block, 0, 1, directions)));
    std::printf("plot data written to %s\n", out_dir.string().c_str());
    return 0;
}

int cmd_check(const RunConfig& cfg, const fs::path& out_dir) {
    const ocorg::Scenario sc = build_scenario(cfg);
    int failures = 0;
    auto report = [&](const char* name, bool ok, const std::string& detail) {
        std::printf("[%s] %s%s%s\n", ok ? "pass" : "FAIL", name,
                    detail.empty() ? "" : ": ", detail.c_str());
        if (!ok) ++failures;
    };

    // RPI invariance on sampled directions: eta_P(A'c) + eta_W(B'c) <= eta_P(c).
    {
        double worst = 0.0;
        const ocorg::Matrix At = (sc.cl.A_K * (1.0 / sc.lambda)).transpose();
        const ocorg::Matrix Bt = (sc.plant.B_w * (1.0 / sc.lambda)).transpose();
        const std::size_t n = sc.plant.n();
        for (int d = 0; d < 64; ++d) {
            ocorg::Vector c(n);
            for (std::size_t i = 0; i < n; ++i) c[i] = ocorg::uniform_pm1(17, i, d);
            const double nc = ocorg::norm2(c);
            if (nc == 0.0) continue;
            for (auto& x : c) x /= nc;
            const double slack = sc.rpi.support(c) - sc.rpi.support(At * c) -
                                 sc.W.support(Bt * c);
            worst = std::min(worst, slack);
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "min slack %.3e", worst);
        report("rpi-invariance", sc.W.terms.empty() || worst >= -1e-9, buf);
    }

    // Closed-loop runs: constraints hold, alpha stays positive, no aborts.
    double min_alpha = 1.0, max_slack = -1e300;
    bool run_ok = true;
    std::string first_error;
    std::string first_csv;
    for (const std::uint64_t seed : cfg.seeds) {
        try {
            const ocorg::SimulationTrace tr = ocorg::simulate(sc, seed);
            const ocorg::RegretReport rep = ocorg::dynamic_regret(tr);
            min_alpha = std::min(min_alpha, rep.min_alpha);
            max_slack = std::max(max_slack, rep.max_slack);
            if (first_csv.empty()) first_csv = ocorg::trace_to_csv(tr);
        } catch (const std::exception& e) {
            run_ok = false;
            if (first_error.empty()) first_error = e.what();
        }
    }
    report("recursive-feasibility", run_ok, first_error);
    if (run_ok) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "max slack %.3e", max_slack);
        report("constraint-satisfaction", max_slack <= 1e-9, buf);
        std::snprintf(buf, sizeof(buf), "min alpha %.6f", min_alpha);
        report("alpha-positivity", min_alpha > 0.0, buf);
        // Determinism: the first seed reruns byte-identically.
        const ocorg::SimulationTrace again = ocorg::simulate(sc, cfg.seeds.front());
        report("determinism", ocorg::trace_to_csv(again) == first_csv, "");
    }

    (void)out_dir;
    std::printf("%s\n", failures == 0 ? "all checks passed" : "checks FAILED");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust online-convex-optimization reference governor simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::string seed_list;
    int horizon = -1;
    app.add_option("--config", config_path, "Run configuration JSON file");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--seed", seed_list, "Comma-separated seed list (overrides config)");
    app.add_option("--horizon", horizon, "Horizon override");

    auto* c_sets = app.add_subcommand("compute-sets", "Compute and cache the constraint sets");
    auto* c_sim = app.add_subcommand("simulate", "Run seeded closed-loop simulations");
    auto* c_plot = app.add_subcommand("plot-data", "Emit 2-D set projections as CSV");
    auto* c_check = app.add_subcommand("check", "Run the invariant suite on a config");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = load_config(config_path);
        if (horizon > 0) cfg.horizon = horizon;
        if (!seed_list.empty()) {
            cfg.seeds.clear();
            std::stringstream ss(seed_list);
            std::string tok;
            while (std::getline(ss, tok, ',')) cfg.seeds.push_back(std::stoull(tok));
            if (cfg.seeds.empty()) throw std::runtime_error("empty --seed list");
        }
        const fs::path out(out_dir);
        if (c_sets->parsed()) return cmd_compute_sets(cfg, out);
        if (c_sim->parsed()) return cmd_simulate(cfg, out);
        if (c_plot->parsed()) return cmd_plot_data(cfg, out);
        if (c_check->parsed()) return cmd_check(cfg, out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
