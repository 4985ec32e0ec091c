#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "werewolf/core/events.hpp"
#include "werewolf/core/state.hpp"

namespace werewolf {

// Rules engine. Every operation takes the current state by const reference
// and returns a new state; rejected inputs throw GameError and leave the
// caller's state untouched.

struct Transition {
  GameState state;
  std::vector<GameEvent> events;
};

struct VoteTally {
  std::map<PlayerId, PlayerId> votes;
  std::optional<PlayerId> eliminated;
  bool tie = false;
  friend bool operator==(const VoteTally&, const VoteTally&) = default;
};

struct VotingTransition {
  GameState state;
  VoteTally tally;
  std::vector<GameEvent> events;
};

/// Seeded role assignment; phase Night{1}.
GameState new_game(const GameConfig& config);

/// Private role cards plus the opening phase change.
std::vector<GameEvent> opening_events(const GameState& state);

std::vector<Action> legal_actions(const GameState& state, PlayerId player);

/// Same rules evaluated from a player's own view. legal_actions(state, p)
/// is defined as legal_actions_for(view_for(state, p)).
std::vector<Action> legal_actions_for(const PlayerView& view);

bool is_legal(const std::vector<Action>& legal, const Action& action);

/// Which night group is expected to act next: werewolves, then seer, then
/// witch. Returns std::nullopt when every required and optional submission
/// is in (resolve_night may run).
std::optional<Role> night_turn(const GameState& state);

GameState submit_night_action(const GameState& state, PlayerId player, const NightAction& action);

Transition resolve_night(const GameState& state);

/// Next speaker during Day Discussion (ascending id among active players).
std::optional<PlayerId> next_speaker(const GameState& state);

Transition record_statement(const GameState& state, PlayerId player, const std::string& text);

VotingTransition process_voting(const GameState& state, const std::map<PlayerId, PlayerId>& votes);

/// Win check; pure in the active role counts and the round.
std::optional<GameOutcome> judge(const GameState& state);

PlayerView view_for(const GameState& state, PlayerId player);

}  // namespace werewolf
