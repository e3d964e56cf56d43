#pragma once

#include <vector>

#include "teamdyn/game.hpp"

namespace teamdyn {

// Atomic congestion game: each player picks a subset of edges; the cost of
// edge e under load l is cost_per_load[e][l-1].
struct CongestionGame {
    int num_players = 0;
    // Per edge, tabulated cost at loads 1..num_players.
    std::vector<std::vector<double>> edge_costs;
    // Per player, list of strategies; each strategy is a set of edge indices.
    std::vector<std::vector<std::vector<int>>> strategies;

    // Throws on structural problems (empty strategies, short cost tables,
    // bad edge indices, non-finite costs).
    void validate() const;

    int load(int edge, const std::vector<int>& pure) const;
    double player_cost(int player, const std::vector<int>& pure) const;
    // Rosenthal potential: sum over edges of the partial sums of the cost
    // table up to the edge's load.
    double potential(const std::vector<int>& pure) const;
};

// Reduction to a two-team zero-sum game: team A is the n congestion players
// with their original strategy sets, team B is n dummy players with a single
// strategy each. Team A's payoff at a pure profile is minus the Rosenthal
// potential, so the stored maximizer tensor is the potential itself.
TeamGame congestion_to_team_game(const CongestionGame& cg);

} // namespace teamdyn
