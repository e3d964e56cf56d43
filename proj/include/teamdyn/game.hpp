#pragma once

#include <Eigen/Dense>
#include <vector>

#include "teamdyn/geometry.hpp"

namespace teamdyn {

// Common interface of all playable objectives. `value` is the maximizing
// side's objective; the minimizing side (the first `min_dim` coordinates)
// receives its negation. Gradients/Hessians are taken with respect to the
// full coordinate vector z (all blocks concatenated, minimizers first).
struct Game {
    virtual ~Game() = default;

    virtual const Domain& domain() const = 0;
    // Number of coordinates controlled by the minimizing side.
    virtual int min_dim() const = 0;
    int dim() const { return domain().dim(); }

    virtual double value(const Eigen::VectorXd& z) const = 0;
    virtual Eigen::VectorXd gradient(const Eigen::VectorXd& z) const = 0;
    virtual Eigen::MatrixXd hessian(const Eigen::VectorXd& z) const = 0;
};

// Two-team zero-sum normal-form game. The dense tensor stores team B's
// (the maximizers') payoff U at every pure strategy profile; team A receives
// -U by construction and no separate tensor exists. Axes are ordered team A
// players then team B players, row-major.
class TeamGame final : public Game {
public:
    TeamGame(std::vector<int> team_a_strategy_counts,
             std::vector<int> team_b_strategy_counts,
             std::vector<double> payoff);

    const std::vector<int>& team_a_strategy_counts() const { return a_counts_; }
    const std::vector<int>& team_b_strategy_counts() const { return b_counts_; }
    const std::vector<double>& payoff() const { return payoff_; }

    int num_players() const { return static_cast<int>(counts_.size()); }
    int num_team_a() const { return static_cast<int>(a_counts_.size()); }
    int strategy_count(int player) const { return counts_[player]; }
    int player_offset(int player) const { return offsets_[player]; }
    bool is_minimizer(int player) const { return player < num_team_a(); }

    double payoff_at(const std::vector<int>& pure) const;

    const Domain& domain() const override { return domain_; }
    int min_dim() const override { return min_dim_; }
    double value(const Eigen::VectorXd& z) const override;
    Eigen::VectorXd gradient(const Eigen::VectorXd& z) const override;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& z) const override;

private:
    std::vector<int> a_counts_, b_counts_;
    std::vector<int> counts_;   // all players, team A first
    std::vector<int> offsets_;  // coordinate offset per player
    std::vector<int> strides_;  // tensor stride per player
    std::vector<double> payoff_;
    Domain domain_;
    int min_dim_ = 0;
};

// Product of per-player mixed strategies, split by team.
struct MixedProfile {
    std::vector<Eigen::VectorXd> x; // team A
    std::vector<Eigen::VectorXd> y; // team B

    Eigen::VectorXd flat() const;
    static MixedProfile from_flat(const TeamGame& game, const Eigen::VectorXd& z);

    // Throws DimensionError on shape mismatch, DomainError if any block is
    // not a probability vector within 1e-12.
    void validate(const TeamGame& game) const;
};

MixedProfile uniform_profile(const TeamGame& game);

// E_{s~profile}[U(s)] — team B's expected payoff (team A receives the
// negation). Exact multilinear contraction.
double evaluate_utility(const TeamGame& game, const MixedProfile& profile);

// Per-player gradient blocks of evaluate_utility: coordinate (i, k) is the
// expected U when player i plays k and everyone else mixes.
std::vector<Eigen::VectorXd> gradient(const TeamGame& game, const MixedProfile& profile);

// Full symmetric matrix of second partials of E[U] over all probability
// coordinates; within-player blocks are exactly zero (multilinearity).
Eigen::MatrixXd hessian_blocks(const TeamGame& game, const MixedProfile& profile);

} // namespace teamdyn
