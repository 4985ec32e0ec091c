#pragma once

#include <string>

#include "json.hpp"
#include "werewolf/core/events.hpp"
#include "werewolf/core/state.hpp"

namespace werewolf {

using Json = nlohmann::json;

void to_json(Json& j, const PlayerId& id);
void from_json(const Json& j, PlayerId& id);
void to_json(Json& j, const Role& role);
void from_json(const Json& j, Role& role);
void to_json(Json& j, const GameOutcome& outcome);
void from_json(const Json& j, GameOutcome& outcome);
void to_json(Json& j, const Phase& phase);
void from_json(const Json& j, Phase& phase);
void to_json(Json& j, const NightAction& action);
void from_json(const Json& j, NightAction& action);
void to_json(Json& j, const EventPayload& payload);
void from_json(const Json& j, EventPayload& payload);
void to_json(Json& j, const Visibility& visibility);
void from_json(const Json& j, Visibility& visibility);
void to_json(Json& j, const GameEvent& event);
void from_json(const Json& j, GameEvent& event);
void to_json(Json& j, const WerewolfKill& entry);
void from_json(const Json& j, WerewolfKill& entry);
void to_json(Json& j, const WitchNight& entry);
void from_json(const Json& j, WitchNight& entry);
void to_json(Json& j, const GameConfig& config);
void from_json(const Json& j, GameConfig& config);
void to_json(Json& j, const PlayerState& player);
void from_json(const Json& j, PlayerState& player);
void to_json(Json& j, const PendingNight& pending);
void from_json(const Json& j, PendingNight& pending);
void to_json(Json& j, const GameState& state);
void from_json(const Json& j, GameState& state);
void to_json(Json& j, const PlayerView& view);

/// seer_dict and similar maps are keyed by the decimal player id.
Json seer_dict_to_json(const std::map<PlayerId, Role>& dict);

/// Canonical compact encoding used for digests and equality checks.
std::string canonical_dump(const GameState& state);

/// Hex SHA-256 of canonical_dump(state).
std::string state_digest(const GameState& state);

}  // namespace werewolf
