#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "teamdyn/congestion.hpp"
#include "teamdyn/game.hpp"

namespace teamdyn {

// JSON document: strategy counts plus the flattened (row-major) payoff
// tensor, with optional family metadata, e.g. {"family":"gmp","omega":0.5}.
nlohmann::json team_game_to_json(const TeamGame& game,
                                 const std::optional<nlohmann::json>& family = {});
TeamGame team_game_from_json(const nlohmann::json& doc);

nlohmann::json congestion_game_to_json(const CongestionGame& cg);
CongestionGame congestion_game_from_json(const nlohmann::json& doc);

} // namespace teamdyn
