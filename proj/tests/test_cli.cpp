#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "cli.hpp"
#include "teamdyn/errors.hpp"
#include "teamdyn/families.hpp"
#include "teamdyn/game.hpp"

using namespace teamdyn;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("teamdyn_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

int run_binary(const std::string& args) {
    const int ret = std::system((std::string(TEAMDYN_BIN_PATH) + " " + args +
                                 " >/dev/null 2>&1")
                                    .c_str());
    REQUIRE(ret != -1);
    return WEXITSTATUS(ret);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::string last_line(const std::string& text) {
    std::vector<std::string> lines = split(text, '\n');
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    REQUIRE(!lines.empty());
    return lines.back();
}

} // namespace

TEST_CASE("presets are enumerable and well formed") {
    const auto names = cli::preset_names();
    REQUIRE(names.size() == 4);
    for (const auto& name : names) {
        const json cfg = cli::preset_config(name);
        CHECK(cfg.contains("kind"));
        if (cfg.at("kind") == "run") {
            CHECK(cfg.contains("game"));
            CHECK(!cfg.at("methods").empty());
        } else {
            CHECK(cfg.at("kind") == "sweep");
            CHECK(cfg.at("n_games").get<int>() > 0);
        }
    }
    CHECK_THROWS_AS(cli::preset_config("nope"), ConfigError);
}

TEST_CASE("game specs instantiate the right games") {
    const json gmp_spec{{"family", "gmp"}, {"omega", 0.5}};
    auto g = cli::make_game(gmp_spec);
    CHECK(g->dim() == 8);
    CHECK(g->min_dim() == 4);

    const json inline_spec{{"team_a_strategy_counts", {2}},
                           {"team_b_strategy_counts", {2}},
                           {"payoff", {1.0, -1.0, -1.0, 1.0}}};
    CHECK(cli::make_game(inline_spec)->dim() == 4);

    const json rnd_spec{
        {"family", "random"}, {"team_a", {2}}, {"team_b", {2, 3}}, {"seed", 9}};
    CHECK(cli::make_game(rnd_spec)->dim() == 7);

    CHECK_THROWS_AS(cli::make_game(json{{"family", "unknown"}}), ConfigError);
    CHECK_THROWS_AS(cli::make_game(json{{"family", "gmp"}}), ConfigError);
}

TEST_CASE("sweep rows are deterministic and seeded by index") {
    cli::SweepSpec spec;
    spec.n_games = 4;
    spec.team_a = {2};
    spec.team_b = {2};
    spec.method.method = Method::KPV;
    spec.method.eta = 0.05;
    spec.method.k = -1.2;
    spec.method.p = 0.02;
    spec.method.max_iters = 2000;
    spec.method.stride = 2000;
    spec.seed = 11;
    spec.jobs = 2;

    const cli::SweepResult a = cli::sweep_games(spec);
    const cli::SweepResult b = cli::sweep_games(spec);
    REQUIRE(a.rows.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(a.rows[i].game_index == i);
        CHECK(a.rows[i].seed == 11u + static_cast<unsigned>(i));
        CHECK(a.rows[i].final_ne_gap == b.rows[i].final_ne_gap);
        CHECK(a.rows[i].converged == b.rows[i].converged);
    }
    CHECK(a.fraction_converged == b.fraction_converged);
    CHECK(a.median_final_gap == b.median_final_gap);
}

TEST_CASE("run command: files, summary consistency, determinism") {
    const json config{
        {"game", {{"family", "gmp"}, {"omega", 0.5}}},
        {"reference", {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5}},
        {"init", {{"ne_perturbation", {{"radius", 0.05}}}}},
        {"max_iters", 2000},
        {"stride", 100},
        {"methods",
         {{{"method", "gda"}, {"eta", 0.2}},
          {{"method", "kpv"}, {"eta", 0.05}, {"k", -1.1}, {"p", 0.3}}}},
    };
    const fs::path out1 = fresh_dir("run1");
    const fs::path out2 = fresh_dir("run2");
    REQUIRE(cli::cmd_run(config, 7, out1.string()) == 0);
    REQUIRE(cli::cmd_run(config, 7, out2.string()) == 0);

    const json summary = slurp_json(out1 / "summary.json");
    for (const char* m : {"gda", "kpv"}) {
        REQUIRE(summary.contains(m));
        CHECK(summary.at(m).contains("termination"));
        CHECK(summary.at(m).contains("wall_clock_s"));
    }
    CHECK_FALSE(summary.at("gda").at("converged").get<bool>());

    // summary's final gap must equal the last CSV row (column after the
    // 2*dim coordinate/average columns).
    const std::string csv = slurp(out1 / "kpv.csv");
    const auto cols = split(last_line(csv), ',');
    REQUIRE(cols.size() == 1 + 8 + 8 + 2);
    CHECK(std::stod(cols[17]) ==
          doctest::Approx(summary.at("kpv").at("final_ne_gap").get<double>())
              .epsilon(1e-15));

    CHECK(slurp(out1 / "gda.csv") == slurp(out2 / "gda.csv"));
    CHECK(slurp(out1 / "kpv.csv") == slurp(out2 / "kpv.csv"));
}

TEST_CASE("empty sweep emits a header-only table") {
    const json config{{"n_games", 0},
                      {"team_a", {2}},
                      {"team_b", {2}},
                      {"method", {{"method", "gda"}, {"eta", 0.1}}},
                      {"max_iters", 100}};
    const fs::path out = fresh_dir("sweep0");
    REQUIRE(cli::cmd_sweep(config, 1, 1, out.string()) == 0);
    CHECK(slurp(out / "sweep.csv") == "game_index,seed,converged,final_ne_gap,iters\n");
}

TEST_CASE("small sweep writes one row per game") {
    const json config{{"n_games", 3},
                      {"team_a", {2}},
                      {"team_b", {2}},
                      {"method",
                       {{"method", "kpv"}, {"eta", 0.05}, {"k", -1.2}, {"p", 0.02}}},
                      {"max_iters", 2000}};
    const fs::path out = fresh_dir("sweep3");
    REQUIRE(cli::cmd_sweep(config, 5, 2, out.string()) == 0);
    const auto lines = split(slurp(out / "sweep.csv"), '\n');
    CHECK(lines.size() == 4); // header + 3 rows
    const json summary = slurp_json(out / "sweep_summary.json");
    CHECK(summary.at("n_games") == 3);
    CHECK(summary.at("fraction_converged").get<double>() >= 0.0);
}

TEST_CASE("stability command reports spectra and the equilibrium verdict") {
    const json config{{"game", {{"family", "gmp"}, {"omega", 0.5}}},
                      {"point", "uniform"},
                      {"eta", 0.05},
                      {"k", -1.1},
                      {"p", 0.3}};
    const fs::path out = fresh_dir("stab");
    REQUIRE(cli::cmd_stability(config, out.string()) == 0);
    const json report = slurp_json(out / "stability.json");
    CHECK(report.at("H_eigenvalues").size() == 4);
    for (const char* m : {"gda", "ogda", "eg", "omwu", "kpv"})
        CHECK(report.at("jacobians").contains(m));
    CHECK(report.at("jacobians").at("kpv").at("spectral_radius").get<double>() < 1.0);
    CHECK(report.at("jacobians").at("gda").at("spectral_radius").get<double>() > 1.0);
    CHECK(report.at("sufficient_condition").at("condition_holds").get<bool>());
    CHECK_FALSE(report.at("weakly_stable").at("weakly_stable").get<bool>());
    CHECK(report.at("weakly_stable").contains("witness"));
}

TEST_CASE("stability at a non-equilibrium point degrades gracefully") {
    const json config{{"game", {{"family", "gmp"}, {"omega", 0.5}}},
                      {"point", {0.4, 0.6, 0.5, 0.5, 0.5, 0.5, 0.6, 0.4}}};
    const fs::path out = fresh_dir("stab_ne");
    REQUIRE(cli::cmd_stability(config, out.string()) == 0);
    const json report = slurp_json(out / "stability.json");
    CHECK_FALSE(report.contains("weakly_stable"));
    CHECK(report.contains("warning"));
}

TEST_CASE("config validation errors") {
    CHECK_THROWS_AS(cli::cmd_run(json{{"game", {{"family", "gmp"}, {"omega", 0.5}}}},
                                 1, fresh_dir("bad1").string()),
                    ConfigError);
    const json bad_eta{{"game", {{"family", "gmp"}, {"omega", 0.5}}},
                       {"methods", {{{"method", "gda"}, {"eta", -0.1}}}}};
    CHECK_THROWS_AS(cli::cmd_run(bad_eta, 1, fresh_dir("bad2").string()), ConfigError);
}

TEST_CASE("binary exit codes") {
    CHECK(run_binary("preset list") == 0);
    CHECK(run_binary("run") == 2);                          // no config source
    CHECK(run_binary("run --config /no/such/file.json") == 2);
    CHECK(run_binary("run --config a.json --preset gmp-figure") == 2);
    CHECK(run_binary("--bogus-flag") == 2);

    const fs::path dir = fresh_dir("bin");
    const fs::path cfg = dir / "cfg.json";
    {
        std::ofstream out(cfg);
        out << json{{"game", {{"family", "gmp"}, {"omega", 0.5}}},
                    {"point", "uniform"}}
                   .dump();
    }
    CHECK(run_binary("stability --config " + cfg.string() + " --out " +
                     (dir / "out").string()) == 0);
    CHECK(fs::exists(dir / "out" / "stability.json"));
}
