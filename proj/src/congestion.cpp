#include "teamdyn/congestion.hpp"

#include <cmath>

#include "teamdyn/errors.hpp"

namespace teamdyn {

void CongestionGame::validate() const {
    if (num_players <= 0) throw DomainError("CongestionGame: need at least one player");
    if (static_cast<int>(strategies.size()) != num_players)
        throw DimensionError("CongestionGame: one strategy set per player required");
    for (const auto& costs : edge_costs) {
        if (static_cast<int>(costs.size()) < num_players)
            throw DomainError("CongestionGame: cost table must cover loads 1..N");
        for (double c : costs)
            if (!std::isfinite(c)) throw DomainError("CongestionGame: non-finite cost");
    }
    for (const auto& strat_set : strategies) {
        if (strat_set.empty())
            throw DomainError("CongestionGame: player with empty strategy set");
        for (const auto& strat : strat_set) {
            if (strat.empty())
                throw DomainError("CongestionGame: strategies must be nonempty edge subsets");
            for (int e : strat)
                if (e < 0 || e >= static_cast<int>(edge_costs.size()))
                    throw DimensionError("CongestionGame: edge index out of range");
        }
    }
}

int CongestionGame::load(int edge, const std::vector<int>& pure) const {
    int l = 0;
    for (int i = 0; i < num_players; ++i)
        for (int e : strategies[i][pure[i]])
            if (e == edge) ++l;
    return l;
}

double CongestionGame::player_cost(int player, const std::vector<int>& pure) const {
    double c = 0.0;
    for (int e : strategies[player][pure[player]])
        c += edge_costs[e][load(e, pure) - 1];
    return c;
}

double CongestionGame::potential(const std::vector<int>& pure) const {
    double phi = 0.0;
    for (int e = 0; e < static_cast<int>(edge_costs.size()); ++e) {
        const int l = load(e, pure);
        for (int j = 1; j <= l; ++j) phi += edge_costs[e][j - 1];
    }
    return phi;
}

TeamGame congestion_to_team_game(const CongestionGame& cg) {
    cg.validate();
    std::vector<int> a_counts;
    for (const auto& strat_set : cg.strategies)
        a_counts.push_back(static_cast<int>(strat_set.size()));
    std::vector<int> b_counts(cg.num_players, 1);

    long entries = 1;
    for (int c : a_counts) entries *= c;
    std::vector<double> payoff(entries);
    std::vector<int> pure(cg.num_players, 0);
    for (long e = 0; e < entries; ++e) {
        long rest = e;
        for (int p = cg.num_players - 1; p >= 0; --p) {
            pure[p] = static_cast<int>(rest % a_counts[p]);
            rest /= a_counts[p];
        }
        payoff[e] = cg.potential(pure);
    }
    return TeamGame(a_counts, b_counts, std::move(payoff));
}

} // namespace teamdyn
