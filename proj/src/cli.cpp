#include "cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "teamdyn/congestion.hpp"
#include "teamdyn/errors.hpp"
#include "teamdyn/families.hpp"
#include "teamdyn/metrics.hpp"
#include "teamdyn/serialize.hpp"
#include "teamdyn/stability.hpp"
#include "teamdyn/wgan.hpp"

namespace teamdyn::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<std::string> preset_names() {
    return {"gmp-figure", "wgan-figure", "avg-iterate", "sweep-2v2"};
}

json preset_config(const std::string& name) {
    if (name == "gmp-figure") {
        // Five dynamics on generalized matching pennies around its unique
        // mixed equilibrium: only the anchored method should settle there.
        return json{
            {"kind", "run"},
            {"game", {{"family", "gmp"}, {"omega", 0.5}}},
            {"reference", {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5}},
            {"init", {{"random", true}}},
            {"max_iters", 100000},
            {"stride", 100},
            {"methods",
             {{{"method", "gda"}, {"eta", 0.2}},
              {{"method", "ogda"}, {"eta", 0.1}},
              {{"method", "eg"}, {"eta", 0.2}},
              {{"method", "omwu"}, {"eta", 0.2}},
              {{"method", "kpv"}, {"eta", 0.05}, {"k", -1.1}, {"p", 0.3}}}},
        };
    }
    if (name == "wgan-figure") {
        return json{
            {"kind", "run"},
            {"game", {{"family", "wgan"}, {"mu", {1.0, -0.5}}, {"pi1", 0.7}}},
            {"init", {{"point", {0.1, 0.15, 0.5, -0.15, -0.45, -0.25, -0.5}}}},
            {"max_iters", 100000},
            {"stride", 100},
            {"methods",
             {{{"method", "gda"}, {"eta", 0.05}},
              {{"method", "ogda"}, {"eta", 0.05}},
              {{"method", "eg"}, {"eta", 0.05}},
              {{"method", "kpv"}, {"eta", 0.05}, {"k", -1.1}, {"p", 0.3}}}},
        };
    }
    if (name == "avg-iterate") {
        return json{
            {"kind", "run"},
            {"game", {{"family", "modified-gmp"}}},
            {"init", {{"random", true}}},
            {"max_iters", 100000},
            {"stride", 100},
            {"methods",
             {{{"method", "gda"}, {"eta", 0.2}},
              {{"method", "ogda"}, {"eta", 0.1}},
              {{"method", "eg"}, {"eta", 0.2}},
              {{"method", "omwu"}, {"eta", 0.2}}}},
        };
    }
    if (name == "sweep-2v2") {
        return json{
            {"kind", "sweep"},
            {"n_games", 100},
            {"team_a", {2, 2}},
            {"team_b", {2, 2}},
            {"method",
             {{"method", "kpv"}, {"eta", 0.05}, {"k", -1.2}, {"p", 0.02}}},
            {"max_iters", 200000},
            {"convergence_threshold", 1e-2},
        };
    }
    throw ConfigError("unknown preset: " + name);
}

std::unique_ptr<Game> make_game(const json& spec) {
    try {
        if (spec.contains("file")) {
            std::ifstream in(spec.at("file").get<std::string>());
            if (!in) throw ConfigError("cannot open game file");
            json doc = json::parse(in);
            return std::make_unique<TeamGame>(team_game_from_json(doc));
        }
        if (spec.contains("congestion_file")) {
            std::ifstream in(spec.at("congestion_file").get<std::string>());
            if (!in) throw ConfigError("cannot open congestion game file");
            json doc = json::parse(in);
            return std::make_unique<TeamGame>(
                congestion_to_team_game(congestion_game_from_json(doc)));
        }
        if (spec.contains("payoff"))
            return std::make_unique<TeamGame>(team_game_from_json(spec));

        const std::string family = spec.at("family").get<std::string>();
        if (family == "gmp")
            return std::make_unique<TeamGame>(make_gmp(spec.at("omega").get<double>()));
        if (family == "modified-gmp")
            return std::make_unique<TeamGame>(make_modified_gmp());
        if (family == "matching-pennies-4p")
            return std::make_unique<TeamGame>(make_multiplayer_matching_pennies());
        if (family == "wgan") {
            const auto mu_vec = spec.at("mu").get<std::vector<double>>();
            Eigen::VectorXd mu(mu_vec.size());
            for (size_t i = 0; i < mu_vec.size(); ++i) mu[i] = mu_vec[i];
            return std::make_unique<TeamWgan>(mu, spec.at("pi1").get<double>());
        }
        if (family == "random")
            return std::make_unique<TeamGame>(random_team_game(
                spec.at("team_a").get<std::vector<int>>(),
                spec.at("team_b").get<std::vector<int>>(),
                spec.at("seed").get<std::uint64_t>()));
        throw ConfigError("unknown game family: " + family);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad game spec: ") + e.what());
    }
}

namespace {

Eigen::VectorXd json_to_vector(const json& arr) {
    Eigen::VectorXd v(arr.size());
    for (size_t i = 0; i < arr.size(); ++i) v[static_cast<int>(i)] = arr[i].get<double>();
    return v;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

json complex_list_to_json(const std::vector<std::complex<double>>& eigs) {
    json arr = json::array();
    for (const auto& ev : eigs) arr.push_back({ev.real(), ev.imag()});
    return arr;
}

json matrix_to_json(const Eigen::MatrixXd& M) {
    json arr = json::array();
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) arr.push_back(M(i, j));
    return arr;
}

DynamicsConfig parse_method(const json& m, const json& config) {
    DynamicsConfig cfg;
    try {
        cfg.method = method_from_string(m.at("method").get<std::string>());
        cfg.eta = m.at("eta").get<double>();
        cfg.k = m.value("k", 0.0);
        cfg.p = m.value("p", 0.0);
        cfg.max_iters = m.value("max_iters", config.value("max_iters", 100000L));
        cfg.stride = config.value("stride", 100L);
        cfg.tol = config.value("tol", 1e-10);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad method spec: ") + e.what());
    }
    if (cfg.eta <= 0.0) throw ConfigError("eta must be positive");
    if (cfg.max_iters <= 0) throw ConfigError("iteration budget must be positive");
    return cfg;
}

Eigen::VectorXd resolve_init(const json& config, const Game& game,
                             const std::optional<Eigen::VectorXd>& reference,
                             std::uint64_t seed) {
    const json init = config.value("init", json{{"random", true}});
    try {
        if (init.contains("point")) {
            Eigen::VectorXd z = json_to_vector(init.at("point"));
            if (!contains(game.domain(), z))
                throw ConfigError("init point is not feasible for the game");
            return z;
        }
        if (init.contains("ne_perturbation")) {
            if (!reference)
                throw ConfigError("ne_perturbation init needs a reference point");
            const double radius = init.at("ne_perturbation").at("radius").get<double>();
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            Eigen::VectorXd z = *reference;
            for (int i = 0; i < z.size(); ++i) z[i] += radius * u(rng);
            return project_profile(game.domain(), z);
        }
        std::mt19937_64 rng(seed);
        return sample_point(game.domain(), rng);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad init spec: ") + e.what());
    }
}

} // namespace

int cmd_run(const json& config, std::uint64_t seed, const std::string& out_dir) {
    auto game = make_game(config.at("game"));
    const auto* team_game = dynamic_cast<const TeamGame*>(game.get());
    const auto* wgan = dynamic_cast<const TeamWgan*>(game.get());

    std::optional<Eigen::VectorXd> reference;
    if (config.contains("reference")) {
        reference = json_to_vector(config.at("reference"));
        if (reference->size() != game->dim())
            throw ConfigError("reference length does not match the game");
    }
    const Eigen::VectorXd init = resolve_init(config, *game, reference, seed);

    if (!config.contains("methods") || config.at("methods").empty())
        throw ConfigError("config needs at least one method");

    fs::create_directories(out_dir);
    json summary;
    for (const json& m : config.at("methods")) {
        DynamicsConfig cfg = parse_method(m, config);
        cfg.reference = reference;
        cfg.strict = false; // divergence is a reportable finding, not a crash

        const auto t0 = std::chrono::steady_clock::now();
        const Trajectory traj = run(*game, cfg, init, seed);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        const std::string name = to_string(cfg.method);
        std::ofstream csv(fs::path(out_dir) / (name + ".csv"));
        write_trajectory_csv(csv, traj);

        json entry;
        entry["termination"] = to_string(traj.termination);
        entry["total_steps"] = traj.total_steps;
        entry["wall_clock_s"] = wall;
        entry["final_ne_gap"] = traj.ne_gaps.back();
        entry["final_dist_ref"] = traj.dist_refs.back();
        if (traj.diverged_step >= 0) entry["diverged_at"] = traj.diverged_step;
        bool converged = traj.termination == Termination::stabilized;
        if (team_game) {
            entry["avg_ne_gap"] = ne_gap(*team_game, traj.final_avg);
            converged = converged && traj.ne_gaps.back() < 1e-2;
        }
        if (wgan) entry["branch_error"] = wgan_branch_error(*wgan, traj.final_z);
        entry["converged"] = converged;
        summary[name] = entry;
    }
    std::ofstream out(fs::path(out_dir) / "summary.json");
    out << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << std::endl;
    return 0;
}

SweepResult sweep_games(const SweepSpec& spec) {
    SweepResult result;
    result.rows.resize(spec.n_games);
    std::atomic<int> next{0};

    auto worker = [&] {
        for (int i = next.fetch_add(1); i < spec.n_games; i = next.fetch_add(1)) {
            const std::uint64_t game_seed = spec.seed + static_cast<std::uint64_t>(i);
            const TeamGame game =
                random_team_game(spec.team_a, spec.team_b, game_seed);
            DynamicsConfig cfg = spec.method;
            cfg.strict = false;
            // Decorrelate the initialization stream from the payoff stream.
            const Trajectory traj = run(game, cfg, std::nullopt, game_seed ^ 0x9e3779b97f4a7c15ULL);
            const double gap = traj.ne_gaps.back();
            result.rows[i] = SweepRow{i, game_seed,
                                      gap < spec.convergence_threshold, gap,
                                      traj.total_steps};
        }
    };
    std::vector<std::thread> pool;
    const int jobs = std::max(1, spec.jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (spec.n_games > 0) {
        int converged = 0;
        std::vector<double> gaps;
        for (const auto& row : result.rows) {
            converged += row.converged ? 1 : 0;
            gaps.push_back(row.final_ne_gap);
        }
        std::sort(gaps.begin(), gaps.end());
        result.fraction_converged = static_cast<double>(converged) / spec.n_games;
        result.median_final_gap = spec.n_games % 2 == 1
                                      ? gaps[spec.n_games / 2]
                                      : 0.5 * (gaps[spec.n_games / 2 - 1] +
                                               gaps[spec.n_games / 2]);
    }
    return result;
}

int cmd_sweep(const json& config, std::uint64_t seed, int jobs,
              const std::string& out_dir) {
    SweepSpec spec;
    try {
        spec.n_games = config.at("n_games").get<int>();
        spec.team_a = config.at("team_a").get<std::vector<int>>();
        spec.team_b = config.at("team_b").get<std::vector<int>>();
        spec.method = parse_method(config.at("method"), config);
        spec.convergence_threshold = config.value("convergence_threshold", 1e-2);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad sweep config: ") + e.what());
    }
    if (spec.n_games < 0) throw ConfigError("n_games must be nonnegative");
    spec.method.stride = spec.method.max_iters; // endpoints only
    spec.seed = seed;
    spec.jobs = jobs;

    const SweepResult result = sweep_games(spec);

    fs::create_directories(out_dir);
    std::ofstream csv(fs::path(out_dir) / "sweep.csv");
    csv << "game_index,seed,converged,final_ne_gap,iters\n";
    char buf[40];
    for (const auto& row : result.rows) {
        std::snprintf(buf, sizeof(buf), "%.17g", row.final_ne_gap);
        csv << row.game_index << ',' << row.seed << ',' << (row.converged ? 1 : 0)
            << ',' << buf << ',' << row.iters << '\n';
    }
    json summary{{"n_games", spec.n_games},
                 {"fraction_converged", result.fraction_converged},
                 {"median_final_ne_gap", result.median_final_gap}};
    std::ofstream out(fs::path(out_dir) / "sweep_summary.json");
    out << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << std::endl;
    return 0;
}

int cmd_stability(const json& config, const std::string& out_dir) {
    auto game = make_game(config.at("game"));
    const auto* team_game = dynamic_cast<const TeamGame*>(game.get());

    Eigen::VectorXd z;
    const json point = config.value("point", json("uniform"));
    if (point.is_string() && point.get<std::string>() == "uniform") {
        if (!team_game)
            throw ConfigError("'uniform' point requires a simplex-domain game");
        z = uniform_profile(*team_game).flat();
    } else if (point.is_array()) {
        z = json_to_vector(point);
        if (z.size() != game->dim())
            throw ConfigError("point length does not match the game");
    } else {
        throw ConfigError("point must be 'uniform' or a coordinate array");
    }

    const double eta = config.value("eta", 0.1);
    const double k = config.value("k", -1.0);
    const double p = config.value("p", 0.1);

    json report;
    const Eigen::MatrixXd H = game_operator(*game, z);
    report["H"] = matrix_to_json(H);
    report["H_eigenvalues"] = complex_list_to_json(eigenvalues(H));

    json per_method;
    std::vector<Method> methods = {Method::GDA, Method::OGDA, Method::EG, Method::KPV};
    if (team_game) methods.insert(methods.begin() + 3, Method::OMWU);
    for (Method m : methods) {
        const Eigen::MatrixXd J = dynamics_jacobian(m, *game, z, eta, k, p);
        per_method[to_string(m)] = {
            {"spectral_radius", spectral_radius(J)},
            {"eigenvalues", complex_list_to_json(eigenvalues(J))},
        };
    }
    report["eta"] = eta;
    report["k"] = k;
    report["p"] = p;
    report["jacobians"] = per_method;

    const SufficientReport suff = check_sufficient(*game, z);
    json sj{{"alpha", suff.alpha},
            {"beta", suff.beta},
            {"invertible", suff.invertible},
            {"e_empty", suff.e_empty},
            {"condition_holds", suff.condition_holds}};
    if (suff.k_interval)
        sj["k_interval"] = {suff.k_interval->first, suff.k_interval->second};
    if (suff.certificate)
        sj["certificate"] = {{"eta", suff.certificate->eta},
                             {"k", suff.certificate->k},
                             {"p", suff.certificate->p},
                             {"spectral_radius", suff.certificate->rho}};
    report["sufficient_condition"] = sj;

    if (team_game) {
        try {
            const auto ws =
                is_weakly_stable(*team_game, MixedProfile::from_flat(*team_game, z));
            json wj{{"weakly_stable", ws.weakly_stable}};
            if (ws.witness)
                wj["witness"] = {{"player", ws.witness->player},
                                 {"strategy", ws.witness->strategy},
                                 {"teammate", ws.witness->teammate},
                                 {"better", ws.witness->better},
                                 {"worse", ws.witness->worse}};
            report["weakly_stable"] = wj;
        } catch (const PreconditionError&) {
            report["warning"] = "point is not a Nash equilibrium; "
                                "equilibrium-only checks skipped";
        }
    }

    std::cout << report.dump(2) << std::endl;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "stability.json");
        out << report.dump(2) << '\n';
    }
    return 0;
}

namespace {

json load_config(const std::string& config_path, const std::string& preset) {
    if (config_path.empty() == preset.empty())
        throw ConfigError("provide exactly one of --config and --preset");
    if (!preset.empty()) return preset_config(preset);
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file: " + config_path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-team game dynamics simulator and stability analyzer"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir = "out";
    std::uint64_t seed = 1;
    int jobs = 1;

    auto add_common = [&](CLI::App* sub, bool with_jobs) {
        sub->add_option("--config", config_path, "JSON experiment config");
        sub->add_option("--preset", preset, "compiled-in config name");
        sub->add_option("--seed", seed, "base RNG seed");
        sub->add_option("--out", out_dir, "output directory");
        if (with_jobs) sub->add_option("--jobs", jobs, "parallel workers");
    };
    CLI::App* run_cmd = app.add_subcommand("run", "simulate dynamics, emit CSV curves");
    add_common(run_cmd, false);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "random-game convergence sweep");
    add_common(sweep_cmd, true);
    CLI::App* stab_cmd =
        app.add_subcommand("stability", "spectral report at a point");
    add_common(stab_cmd, false);
    CLI::App* preset_cmd = app.add_subcommand("preset", "preset utilities");
    std::string preset_action;
    preset_cmd->add_option("action", preset_action, "list")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (preset_cmd->parsed()) {
            if (preset_action != "list") throw ConfigError("unknown preset action");
            for (const auto& name : preset_names()) std::cout << name << '\n';
            return 0;
        }
        const json config = load_config(config_path, preset);
        if (run_cmd->parsed()) return cmd_run(config, seed, out_dir);
        if (sweep_cmd->parsed()) return cmd_sweep(config, seed, jobs, out_dir);
        if (stab_cmd->parsed()) return cmd_stability(config, out_dir);
        throw ConfigError("no subcommand given");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const CapabilityError& e) {
        std::cerr << "capability error: " << e.what() << '\n';
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace teamdyn::cli
