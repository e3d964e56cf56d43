#pragma once

#include <vector>

#include "teamdyn/game.hpp"

namespace teamdyn {

// Exhaustive equilibrium search for tiny games (test oracle): scans the
// product of per-player probability grids with the given resolution, locally
// refines the promising points by a projected pattern search on the NE-gap,
// and returns the deduplicated profiles whose refined gap is below 1e-6.
// Requires total probability coordinates <= 8 and grid_resolution <= 50;
// throws CapabilityError otherwise.
std::vector<MixedProfile> find_ne_bruteforce(const TeamGame& game, int grid_resolution);

} // namespace teamdyn
