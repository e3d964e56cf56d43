#pragma once

#include <json.hpp>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "teamdyn/dynamics.hpp"
#include "teamdyn/game.hpp"

namespace teamdyn::cli {

// Compiled-in experiment configurations; see preset_names() for the list.
std::vector<std::string> preset_names();
nlohmann::json preset_config(const std::string& name);

// Instantiate the game described by a config's "game" object (family +
// parameters, inline tensor, or file reference).
std::unique_ptr<Game> make_game(const nlohmann::json& spec);

struct SweepSpec {
    int n_games = 0;
    std::vector<int> team_a, team_b;
    DynamicsConfig method;
    double convergence_threshold = 1e-2;
    std::uint64_t seed = 1;
    int jobs = 1;
};

struct SweepRow {
    int game_index;
    std::uint64_t seed;
    bool converged;
    double final_ne_gap;
    long iters;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double fraction_converged = 0.0;
    double median_final_gap = std::numeric_limits<double>::quiet_NaN();
};

// Run the configured method on n seeded random games (parallel up to
// spec.jobs; per-game determinism via seeds derived from spec.seed + index).
SweepResult sweep_games(const SweepSpec& spec);

// Subcommand drivers; return process exit codes (0 success, 2 config error,
// 3 numeric error).
int cmd_run(const nlohmann::json& config, std::uint64_t seed, const std::string& out_dir);
int cmd_sweep(const nlohmann::json& config, std::uint64_t seed, int jobs,
              const std::string& out_dir);
int cmd_stability(const nlohmann::json& config, const std::string& out_dir);

// Full argv entry point used by the binary.
int main(int argc, char** argv);

} // namespace teamdyn::cli
