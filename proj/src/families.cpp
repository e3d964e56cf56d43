#include "teamdyn/families.hpp"

#include <iostream>
#include <random>

#include "teamdyn/errors.hpp"

namespace teamdyn {

namespace {

// Build the 2v2 two-strategy tensor from a 3x3 table of *team A* payoffs
// indexed by the joint-strategy class of each pair: 0 = both H, 1 = split,
// 2 = both T. The stored tensor is team B's payoff, i.e. the negation.
TeamGame from_pair_table(const double a[3][3]) {
    std::vector<double> payoff(16);
    auto cls = [](int s1, int s2) { return s1 + s2; };
    int e = 0;
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            for (int y1 = 0; y1 < 2; ++y1)
                for (int y2 = 0; y2 < 2; ++y2)
                    payoff[e++] = -a[cls(x1, x2)][cls(y1, y2)];
    return TeamGame({2, 2}, {2, 2}, std::move(payoff));
}

} // namespace

TeamGame make_gmp(double omega) {
    if (omega <= 0.0 || omega > 1.0)
        throw DomainError("make_gmp: omega must lie in (0, 1]");
    if (omega == 1.0)
        std::cerr << "make_gmp: omega = 1 admits extra pure equilibria\n";
    const double w = omega;
    const double a[3][3] = {
        {1.0, w, -1.0},
        {-w, 0.0, -w},
        {-1.0, w, 1.0},
    };
    return from_pair_table(a);
}

TeamGame make_modified_gmp() {
    const double a[3][3] = {
        {2.0, 0.5, -2.0},
        {-0.5, 0.0, -0.5},
        {-1.0, 0.5, 1.0},
    };
    return from_pair_table(a);
}

TeamGame make_multiplayer_matching_pennies() {
    const double a[3][3] = {
        {-1.0, -0.5, 1.0},
        {0.5, 0.0, 0.5},
        {1.0, -0.5, -1.0},
    };
    return from_pair_table(a);
}

TeamGame random_team_game(const std::vector<int>& team_a_strategy_counts,
                          const std::vector<int>& team_b_strategy_counts,
                          std::uint64_t seed) {
    if (team_a_strategy_counts.empty() || team_b_strategy_counts.empty())
        throw DomainError("random_team_game: each team needs at least one player");
    long entries = 1;
    for (int c : team_a_strategy_counts) {
        if (c <= 0) throw DomainError("random_team_game: strategy counts must be positive");
        entries *= c;
    }
    for (int c : team_b_strategy_counts) {
        if (c <= 0) throw DomainError("random_team_game: strategy counts must be positive");
        entries *= c;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> payoff(entries);
    for (double& p : payoff) p = u(rng);
    return TeamGame(team_a_strategy_counts, team_b_strategy_counts, std::move(payoff));
}

} // namespace teamdyn
