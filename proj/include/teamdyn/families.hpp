#pragma once

#include <cstdint>
#include <vector>

#include "teamdyn/game.hpp"

namespace teamdyn {

// Generalized matching pennies: two teams of two players, two strategies
// each (H/T). Teammates try to agree with each other and disagree with the
// other team; omega scales the intra-team coordination reward/penalty.
// Requires 0 < omega <= 1; omega == 1 emits a warning on stderr because
// additional pure equilibria appear there.
TeamGame make_gmp(double omega);

// Variant of GMP with asymmetric payoffs whose time-average play also stays
// away from equilibrium under the baseline dynamics.
TeamGame make_modified_gmp();

// Two-team-of-two-players matching pennies; equals GMP(1/2) with the team
// roles (signs) swapped.
TeamGame make_multiplayer_matching_pennies();

// Payoff tensor filled i.i.d. uniform on [-1, 1] from a deterministic
// seeded generator; identical seeds give identical games.
TeamGame random_team_game(const std::vector<int>& team_a_strategy_counts,
                          const std::vector<int>& team_b_strategy_counts,
                          std::uint64_t seed);

} // namespace teamdyn
