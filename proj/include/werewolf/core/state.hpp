#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "werewolf/core/config.hpp"
#include "werewolf/core/events.hpp"
#include "werewolf/core/rng.hpp"
#include "werewolf/core/types.hpp"

namespace werewolf {

struct PlayerState {
  PlayerId id;
  std::string name;
  Role role = Role::Villager;
  PlayerStatus status = PlayerStatus::Active;
  std::optional<EliminationCause> elimination_cause;

  bool active() const noexcept { return status == PlayerStatus::Active; }
  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

/// Night submissions collected before resolve_night.
struct PendingNight {
  std::map<PlayerId, PlayerId> werewolf_choices;
  bool seer_submitted = false;
  std::optional<PlayerId> seer_target;
  std::optional<WitchAction> witch_action;
  // Set once every active werewolf has submitted.
  std::optional<PlayerId> chosen_kill;

  friend bool operator==(const PendingNight&, const PendingNight&) = default;
};

/// Authoritative game state. Field names follow the persisted JSON shape.
struct GameState {
  GameConfig config;
  std::vector<PlayerState> players;
  int round = 1;
  Phase phase = NightPhase{1};
  bool game_status = true;
  int num_cure = 0;
  int num_poison = 0;
  std::vector<EventPayload> log;  // public history
  std::vector<WerewolfKill> werewolf_log;
  std::vector<WitchNight> witch_log;
  std::map<PlayerId, Role> seer_dict;
  PendingNight pending_night;
  std::size_t discussion_turn = 0;
  RngStream rng;

  const PlayerState& player(PlayerId id) const;
  PlayerState& player(PlayerId id);
  bool has_player(PlayerId id) const noexcept {
    return id.value >= 1 && id.value <= static_cast<int>(players.size());
  }

  std::vector<PlayerId> active_players() const;
  std::vector<PlayerId> players_with_role(Role role) const;
  std::optional<PlayerId> active_with_role(Role role) const;
  int active_count(Team team) const noexcept;

  friend bool operator==(const GameState&, const GameState&) = default;
};

struct PlayerSummary {
  PlayerId id;
  std::string name;
  friend bool operator==(const PlayerSummary&, const PlayerSummary&) = default;
};

/// Role-filtered projection of GameState. Role-conditional fields are
/// engaged only for the roles allowed to see them.
struct PlayerView {
  PlayerId self_id;
  std::string self_name;
  Role self_role = Role::Villager;
  bool self_active = true;
  int round = 1;
  Phase phase = NightPhase{1};
  std::vector<PlayerSummary> active_players;
  std::vector<EventPayload> log;

  // Werewolf only.
  std::optional<std::vector<PlayerId>> fellow_werewolves;
  std::optional<std::vector<WerewolfKill>> werewolf_log;
  // Seer only.
  std::optional<std::map<PlayerId, Role>> seer_dict;
  // Witch only. night_kill_target is set during the witch's turn.
  std::optional<std::vector<WitchNight>> witch_log;
  std::optional<int> num_cure;
  std::optional<int> num_poison;
  std::optional<PlayerId> night_kill_target;

  bool is_active(PlayerId id) const noexcept;

  friend bool operator==(const PlayerView&, const PlayerView&) = default;
};

}  // namespace werewolf
