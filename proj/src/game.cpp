#include "teamdyn/game.hpp"

#include <cmath>

#include "teamdyn/errors.hpp"

namespace teamdyn {

TeamGame::TeamGame(std::vector<int> team_a_strategy_counts,
                   std::vector<int> team_b_strategy_counts,
                   std::vector<double> payoff)
    : a_counts_(std::move(team_a_strategy_counts)),
      b_counts_(std::move(team_b_strategy_counts)),
      payoff_(std::move(payoff)) {
    if (a_counts_.empty() || b_counts_.empty())
        throw DomainError("TeamGame: each team needs at least one player");
    counts_ = a_counts_;
    counts_.insert(counts_.end(), b_counts_.begin(), b_counts_.end());
    long entries = 1;
    for (int c : counts_) {
        if (c <= 0) throw DomainError("TeamGame: strategy counts must be positive");
        entries *= c;
    }
    if (static_cast<long>(payoff_.size()) != entries)
        throw DimensionError("TeamGame: payoff tensor size does not match strategy counts");
    for (double u : payoff_)
        if (!std::isfinite(u)) throw DomainError("TeamGame: payoff entries must be finite");

    const int n = num_players();
    offsets_.resize(n);
    strides_.resize(n);
    int off = 0;
    for (int p = 0; p < n; ++p) {
        offsets_[p] = off;
        off += counts_[p];
    }
    long stride = 1;
    for (int p = n - 1; p >= 0; --p) {
        strides_[p] = static_cast<int>(stride);
        stride *= counts_[p];
    }
    for (int p = 0; p < num_team_a(); ++p) min_dim_ += counts_[p];
    domain_.kind = Domain::Kind::product_of_simplices;
    domain_.shape = counts_;
}

double TeamGame::payoff_at(const std::vector<int>& pure) const {
    if (static_cast<int>(pure.size()) != num_players())
        throw DimensionError("payoff_at: wrong number of strategies");
    long flat = 0;
    for (int p = 0; p < num_players(); ++p) {
        if (pure[p] < 0 || pure[p] >= counts_[p])
            throw DimensionError("payoff_at: strategy index out of range");
        flat += static_cast<long>(pure[p]) * strides_[p];
    }
    return payoff_[flat];
}

namespace {

// Decode flat tensor index -> per-player strategy, walking the row-major
// layout once per call site. Kept inline-small; tensors here are tiny.
inline void decode(long flat, const std::vector<int>& counts, std::vector<int>& s) {
    for (int p = static_cast<int>(counts.size()) - 1; p >= 0; --p) {
        s[p] = static_cast<int>(flat % counts[p]);
        flat /= counts[p];
    }
}

} // namespace

double TeamGame::value(const Eigen::VectorXd& z) const {
    if (z.size() != dim()) throw DimensionError("TeamGame::value: wrong coordinate count");
    const int n = num_players();
    std::vector<int> s(n);
    double total = 0.0;
    for (long e = 0; e < static_cast<long>(payoff_.size()); ++e) {
        decode(e, counts_, s);
        double w = payoff_[e];
        for (int p = 0; p < n && w != 0.0; ++p) w *= z[offsets_[p] + s[p]];
        total += w;
    }
    return total;
}

Eigen::VectorXd TeamGame::gradient(const Eigen::VectorXd& z) const {
    if (z.size() != dim()) throw DimensionError("TeamGame::gradient: wrong coordinate count");
    const int n = num_players();
    std::vector<int> s(n);
    std::vector<double> prefix(n + 1), suffix(n + 1);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim());
    for (long e = 0; e < static_cast<long>(payoff_.size()); ++e) {
        const double u = payoff_[e];
        if (u == 0.0) continue;
        decode(e, counts_, s);
        prefix[0] = 1.0;
        for (int p = 0; p < n; ++p) prefix[p + 1] = prefix[p] * z[offsets_[p] + s[p]];
        suffix[n] = 1.0;
        for (int p = n - 1; p >= 0; --p) suffix[p] = suffix[p + 1] * z[offsets_[p] + s[p]];
        for (int p = 0; p < n; ++p)
            g[offsets_[p] + s[p]] += u * prefix[p] * suffix[p + 1];
    }
    return g;
}

Eigen::MatrixXd TeamGame::hessian(const Eigen::VectorXd& z) const {
    if (z.size() != dim()) throw DimensionError("TeamGame::hessian: wrong coordinate count");
    const int n = num_players();
    std::vector<int> s(n);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim(), dim());
    for (long e = 0; e < static_cast<long>(payoff_.size()); ++e) {
        const double u = payoff_[e];
        if (u == 0.0) continue;
        decode(e, counts_, s);
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double w = u;
                for (int r = 0; r < n; ++r)
                    if (r != p && r != q) w *= z[offsets_[r] + s[r]];
                const int i = offsets_[p] + s[p];
                const int j = offsets_[q] + s[q];
                h(i, j) += w;
                h(j, i) += w;
            }
        }
    }
    return h;
}

Eigen::VectorXd MixedProfile::flat() const {
    int d = 0;
    for (const auto& v : x) d += static_cast<int>(v.size());
    for (const auto& v : y) d += static_cast<int>(v.size());
    Eigen::VectorXd z(d);
    int off = 0;
    for (const auto& v : x) {
        z.segment(off, v.size()) = v;
        off += static_cast<int>(v.size());
    }
    for (const auto& v : y) {
        z.segment(off, v.size()) = v;
        off += static_cast<int>(v.size());
    }
    return z;
}

MixedProfile MixedProfile::from_flat(const TeamGame& game, const Eigen::VectorXd& z) {
    if (z.size() != game.dim())
        throw DimensionError("MixedProfile::from_flat: wrong coordinate count");
    MixedProfile p;
    for (int i = 0; i < game.num_players(); ++i) {
        Eigen::VectorXd block = z.segment(game.player_offset(i), game.strategy_count(i));
        if (game.is_minimizer(i))
            p.x.push_back(std::move(block));
        else
            p.y.push_back(std::move(block));
    }
    return p;
}

void MixedProfile::validate(const TeamGame& game) const {
    if (static_cast<int>(x.size()) != game.num_team_a() ||
        static_cast<int>(y.size()) != game.num_players() - game.num_team_a())
        throw DimensionError("MixedProfile: wrong player counts");
    auto check = [&](const Eigen::VectorXd& v, int expected) {
        if (v.size() != expected)
            throw DimensionError("MixedProfile: strategy vector length mismatch");
        double sum = 0.0;
        for (int i = 0; i < v.size(); ++i) {
            if (!(v[i] >= -1e-12))
                throw DomainError("MixedProfile: negative probability");
            sum += v[i];
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw DomainError("MixedProfile: probabilities do not sum to 1");
    };
    for (size_t i = 0; i < x.size(); ++i) check(x[i], game.strategy_count(static_cast<int>(i)));
    for (size_t j = 0; j < y.size(); ++j)
        check(y[j], game.strategy_count(game.num_team_a() + static_cast<int>(j)));
}

MixedProfile uniform_profile(const TeamGame& game) {
    MixedProfile p;
    for (int i = 0; i < game.num_players(); ++i) {
        const int c = game.strategy_count(i);
        Eigen::VectorXd v = Eigen::VectorXd::Constant(c, 1.0 / c);
        if (game.is_minimizer(i))
            p.x.push_back(std::move(v));
        else
            p.y.push_back(std::move(v));
    }
    return p;
}

double evaluate_utility(const TeamGame& game, const MixedProfile& profile) {
    profile.validate(game);
    return game.value(profile.flat());
}

std::vector<Eigen::VectorXd> gradient(const TeamGame& game, const MixedProfile& profile) {
    profile.validate(game);
    const Eigen::VectorXd g = game.gradient(profile.flat());
    std::vector<Eigen::VectorXd> blocks;
    for (int i = 0; i < game.num_players(); ++i)
        blocks.push_back(g.segment(game.player_offset(i), game.strategy_count(i)));
    return blocks;
}

Eigen::MatrixXd hessian_blocks(const TeamGame& game, const MixedProfile& profile) {
    profile.validate(game);
    return game.hessian(profile.flat());
}

} // namespace teamdyn
