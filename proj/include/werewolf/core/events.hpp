#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "werewolf/core/types.hpp"

namespace werewolf {

// Event payloads shared by the rules engine (public log), the session log,
// JSONL persistence and the wire protocol. Rules operations emit the
// game-level kinds; the orchestrator adds the streaming and diagnostic kinds.

struct PhaseChange {
  Phase phase;
  friend bool operator==(const PhaseChange&, const PhaseChange&) = default;
};

struct RoleAssignment {
  PlayerId player;
  Role role = Role::Villager;
  std::vector<PlayerId> fellow_werewolves;  // empty unless role == Werewolf
  friend bool operator==(const RoleAssignment&, const RoleAssignment&) = default;
};

struct NightActionSubmitted {
  int round = 0;
  PlayerId player;
  NightAction action;
  friend bool operator==(const NightActionSubmitted&, const NightActionSubmitted&) = default;
};

/// One seer_dict entry learned this night.
struct SeerReveal {
  int round = 0;
  PlayerId target;
  Role role = Role::Villager;
  friend bool operator==(const SeerReveal&, const SeerReveal&) = default;
};

/// werewolf_log record: the target the pack settled on for a night.
struct WerewolfKill {
  int round = 0;
  PlayerId target;
  friend bool operator==(const WerewolfKill&, const WerewolfKill&) = default;
};

/// witch_log record.
struct WitchNight {
  int round = 0;
  std::optional<PlayerId> kill_target;
  bool cured = false;
  std::optional<PlayerId> poisoned;
  friend bool operator==(const WitchNight&, const WitchNight&) = default;
};

/// Public death announcement. Deaths are sorted by id and carry no cause.
struct NightResult {
  int round = 0;
  std::vector<PlayerId> deaths;
  friend bool operator==(const NightResult&, const NightResult&) = default;
};

struct StatementChunk {
  std::uint64_t utterance = 0;
  PlayerId speaker;
  std::size_t index = 0;
  std::string text;
  bool is_final = false;
  friend bool operator==(const StatementChunk&, const StatementChunk&) = default;
};

/// A complete discussion statement; this is what the public log keeps.
struct StatementDone {
  int round = 0;
  PlayerId speaker;
  std::string text;
  friend bool operator==(const StatementDone&, const StatementDone&) = default;
};

struct VoteResult {
  int round = 0;
  std::map<PlayerId, PlayerId> votes;
  std::optional<PlayerId> eliminated;
  bool tie = false;
  friend bool operator==(const VoteResult&, const VoteResult&) = default;
};

struct ActionRequest {
  PlayerId player;
  std::string task;
  std::vector<std::string> options;
  std::int64_t deadline_ms = 0;
  std::optional<PlayerId> kill_target;  // witch only
  friend bool operator==(const ActionRequest&, const ActionRequest&) = default;
};

struct Fallback {
  PlayerId player;
  std::string task;
  std::string reason;
  std::string action;
  friend bool operator==(const Fallback&, const Fallback&) = default;
};

struct Degradation {
  std::uint64_t utterance = 0;
  std::size_t index = 0;
  std::string cause;
  friend bool operator==(const Degradation&, const Degradation&) = default;
};

struct OutcomeAnnounced {
  GameOutcome outcome;
  friend bool operator==(const OutcomeAnnounced&, const OutcomeAnnounced&) = default;
};

using EventPayload =
    std::variant<PhaseChange, RoleAssignment, NightActionSubmitted, SeerReveal, WerewolfKill, WitchNight,
                 NightResult, StatementChunk, StatementDone, VoteResult, ActionRequest, Fallback, Degradation,
                 OutcomeAnnounced>;

std::string_view payload_type(const EventPayload& payload) noexcept;

struct Visibility {
  enum class Scope { Public, Private, System };

  Scope scope = Scope::Public;
  PlayerId addressee;  // meaningful only for Private

  static Visibility everyone() { return {}; }
  static Visibility only(PlayerId player) { return {Scope::Private, player}; }
  static Visibility system() { return {Scope::System, PlayerId{}}; }

  /// Spectators pass std::nullopt.
  bool admits(std::optional<PlayerId> viewer) const noexcept {
    switch (scope) {
      case Scope::Public: return true;
      case Scope::Private: return viewer.has_value() && *viewer == addressee;
      case Scope::System: return false;
    }
    return false;
  }

  friend bool operator==(const Visibility&, const Visibility&) = default;
};

struct GameEvent {
  Visibility visibility;
  EventPayload payload;
  friend bool operator==(const GameEvent&, const GameEvent&) = default;
};

}  // namespace werewolf
