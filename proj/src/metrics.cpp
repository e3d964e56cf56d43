#include "teamdyn/metrics.hpp"

#include <algorithm>

#include "teamdyn/errors.hpp"

namespace teamdyn {

namespace {

// Per-player payoff of each pure strategy against the others' mixtures is a
// gradient block of E[U], up to the minimizer sign.
double best_response_from_gradient(const TeamGame& game, int player,
                                   const Eigen::VectorXd& g) {
    const double sign = game.is_minimizer(player) ? -1.0 : 1.0;
    const int off = game.player_offset(player);
    double best = sign * g[off];
    for (int k = 1; k < game.strategy_count(player); ++k)
        best = std::max(best, sign * g[off + k]);
    return best;
}

} // namespace

double player_utility(const TeamGame& game, int player, const Eigen::VectorXd& z) {
    if (player < 0 || player >= game.num_players())
        throw DimensionError("player_utility: invalid player index");
    const double sign = game.is_minimizer(player) ? -1.0 : 1.0;
    return sign * game.value(z);
}

double best_response_value(const TeamGame& game, int player, const Eigen::VectorXd& z) {
    if (player < 0 || player >= game.num_players())
        throw DimensionError("best_response_value: invalid player index");
    return best_response_from_gradient(game, player, game.gradient(z));
}

double best_response_value(const TeamGame& game, int player, const MixedProfile& profile) {
    profile.validate(game);
    return best_response_value(game, player, profile.flat());
}

double ne_gap(const TeamGame& game, const Eigen::VectorXd& z) {
    if (z.size() != game.dim()) throw DimensionError("ne_gap: wrong coordinate count");
    const Eigen::VectorXd g = game.gradient(z);
    const double u = game.value(z);
    double gap = 0.0;
    for (int p = 0; p < game.num_players(); ++p) {
        const double sign = game.is_minimizer(p) ? -1.0 : 1.0;
        const double summand = best_response_from_gradient(game, p, g) - sign * u;
        gap += std::max(summand, 0.0);
    }
    return gap;
}

double ne_gap(const TeamGame& game, const MixedProfile& profile) {
    profile.validate(game);
    return ne_gap(game, profile.flat());
}

} // namespace teamdyn
