#include "teamdyn/bruteforce.hpp"

#include <algorithm>
#include <cmath>

#include "teamdyn/errors.hpp"
#include "teamdyn/geometry.hpp"
#include "teamdyn/metrics.hpp"

namespace teamdyn {

namespace {

// All ways to place `total` grid ticks on `dims` coordinates.
void compositions(int total, int dims, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
    if (dims == 1) {
        current.push_back(total);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int t = 0; t <= total; ++t) {
        current.push_back(t);
        compositions(total - t, dims - 1, current, out);
        current.pop_back();
    }
}

// Coordinate-wise pattern search on the NE-gap over the product of
// simplices, with a shrinking step.
double refine(const TeamGame& game, Eigen::VectorXd& z) {
    const Domain& domain = game.domain();
    double gap = ne_gap(game, z);
    double step = 0.25;
    while (step > 1e-10) {
        bool improved = false;
        for (int i = 0; i < z.size(); ++i) {
            for (double dir : {+1.0, -1.0}) {
                Eigen::VectorXd cand = z;
                cand[i] += dir * step;
                cand = project_profile(domain, cand);
                const double g = ne_gap(game, cand);
                if (g < gap - 1e-15) {
                    gap = g;
                    z = cand;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return gap;
}

} // namespace

std::vector<MixedProfile> find_ne_bruteforce(const TeamGame& game, int grid_resolution) {
    if (game.dim() > 8)
        throw CapabilityError("find_ne_bruteforce: more than 8 probability coordinates");
    if (grid_resolution > 50 || grid_resolution < 1)
        throw CapabilityError("find_ne_bruteforce: grid resolution must be in 1..50");

    // Per-player grid points.
    std::vector<std::vector<Eigen::VectorXd>> grids(game.num_players());
    for (int p = 0; p < game.num_players(); ++p) {
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions(grid_resolution, game.strategy_count(p), cur, comps);
        for (const auto& c : comps) {
            Eigen::VectorXd v(game.strategy_count(p));
            for (int i = 0; i < v.size(); ++i)
                v[i] = static_cast<double>(c[i]) / grid_resolution;
            grids[p].push_back(std::move(v));
        }
    }

    // Scan the product grid, keeping the candidates worth refining.
    std::vector<std::pair<double, Eigen::VectorXd>> candidates;
    double best_gap = std::numeric_limits<double>::infinity();
    std::vector<size_t> index(game.num_players(), 0);
    while (true) {
        Eigen::VectorXd z(game.dim());
        for (int p = 0; p < game.num_players(); ++p)
            z.segment(game.player_offset(p), game.strategy_count(p)) = grids[p][index[p]];
        const double gap = ne_gap(game, z);
        best_gap = std::min(best_gap, gap);
        candidates.emplace_back(gap, std::move(z));

        int p = game.num_players() - 1;
        while (p >= 0 && ++index[p] == grids[p].size()) index[p--] = 0;
        if (p < 0) break;
    }
    const double keep = best_gap + 1.0 / grid_resolution;

    std::vector<MixedProfile> found;
    std::vector<Eigen::VectorXd> found_flat;
    for (auto& [gap, z] : candidates) {
        if (gap > keep) continue;
        if (refine(game, z) >= 1e-6) continue;
        bool duplicate = false;
        for (const auto& other : found_flat)
            if ((z - other).lpNorm<Eigen::Infinity>() < 1e-4) {
                duplicate = true;
                break;
            }
        if (duplicate) continue;
        found_flat.push_back(z);
        found.push_back(MixedProfile::from_flat(game, z));
    }
    return found;
}

} // namespace teamdyn
