#include "teamdyn/serialize.hpp"

#include "teamdyn/errors.hpp"

namespace teamdyn {

using nlohmann::json;

json team_game_to_json(const TeamGame& game, const std::optional<json>& family) {
    json doc;
    doc["team_a_strategy_counts"] = game.team_a_strategy_counts();
    doc["team_b_strategy_counts"] = game.team_b_strategy_counts();
    doc["payoff"] = game.payoff();
    if (family) doc["family"] = *family;
    return doc;
}

TeamGame team_game_from_json(const json& doc) {
    try {
        return TeamGame(doc.at("team_a_strategy_counts").get<std::vector<int>>(),
                        doc.at("team_b_strategy_counts").get<std::vector<int>>(),
                        doc.at("payoff").get<std::vector<double>>());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("team_game_from_json: ") + e.what());
    }
}

json congestion_game_to_json(const CongestionGame& cg) {
    json doc;
    doc["num_players"] = cg.num_players;
    doc["edges"] = json::array();
    for (const auto& costs : cg.edge_costs) doc["edges"].push_back({{"costs", costs}});
    doc["strategies"] = cg.strategies;
    return doc;
}

CongestionGame congestion_game_from_json(const json& doc) {
    CongestionGame cg;
    try {
        cg.num_players = doc.at("num_players").get<int>();
        for (const auto& edge : doc.at("edges"))
            cg.edge_costs.push_back(edge.at("costs").get<std::vector<double>>());
        cg.strategies =
            doc.at("strategies").get<std::vector<std::vector<std::vector<int>>>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("congestion_game_from_json: ") + e.what());
    }
    cg.validate();
    return cg;
}

} // namespace teamdyn
