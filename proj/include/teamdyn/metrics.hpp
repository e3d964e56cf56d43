#pragma once

#include <Eigen/Dense>

#include "teamdyn/game.hpp"

namespace teamdyn {

// Player's own expected payoff at the profile: -E[U] for team A members,
// E[U] for team B members.
double player_utility(const TeamGame& game, int player, const Eigen::VectorXd& z);

// Max over the player's pure strategies of their payoff with everyone else
// fixed; a pure best response attains the max by multilinearity.
double best_response_value(const TeamGame& game, int player, const MixedProfile& profile);
double best_response_value(const TeamGame& game, int player, const Eigen::VectorXd& z);

// Sum over all players of max(0, best response value - current value); zero
// exactly at a Nash equilibrium.
double ne_gap(const TeamGame& game, const MixedProfile& profile);
double ne_gap(const TeamGame& game, const Eigen::VectorXd& z);

} // namespace teamdyn
