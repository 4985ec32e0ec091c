#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace werewolf {

enum class Role { Werewolf, Villager, Seer, Witch };
enum class Team { Werewolf, Village };

inline constexpr Role kAllRoles[] = {Role::Werewolf, Role::Villager, Role::Seer, Role::Witch};

constexpr Team team_of(Role role) noexcept {
  return role == Role::Werewolf ? Team::Werewolf : Team::Village;
}

std::string_view to_string(Role role) noexcept;
std::optional<Role> role_from_string(std::string_view name) noexcept;

/// Stable 1-based player identifier. Players are addressed as "P<id>" in
/// prompts and on the wire.
struct PlayerId {
  int value = 0;

  constexpr PlayerId() = default;
  constexpr explicit PlayerId(int v) : value(v) {}

  constexpr std::size_t index() const noexcept { return static_cast<std::size_t>(value - 1); }
  static constexpr PlayerId from_index(std::size_t i) noexcept {
    return PlayerId(static_cast<int>(i) + 1);
  }

  friend constexpr auto operator<=>(PlayerId, PlayerId) = default;
};

std::string alias_of(PlayerId id);

enum class PlayerStatus { Active, Eliminated };
enum class EliminationCause { WerewolfKill, Poison, Vote };

std::string_view to_string(EliminationCause cause) noexcept;

enum class DayStage { Discussion, Voting };

enum class Winner { WerewolfTeam, VillageTeam, Draw };
enum class OutcomeReason { WerewolvesEliminated, WerewolfParity, MaxRoundsReached };

std::string_view to_string(Winner winner) noexcept;
std::string_view to_string(OutcomeReason reason) noexcept;

struct GameOutcome {
  Winner winner = Winner::Draw;
  OutcomeReason reason = OutcomeReason::MaxRoundsReached;
  int final_round = 0;

  friend bool operator==(const GameOutcome&, const GameOutcome&) = default;
};

struct NightPhase {
  int round = 1;
  friend bool operator==(const NightPhase&, const NightPhase&) = default;
};

struct DayPhase {
  int round = 1;
  DayStage stage = DayStage::Discussion;
  friend bool operator==(const DayPhase&, const DayPhase&) = default;
};

struct EndedPhase {
  GameOutcome outcome;
  friend bool operator==(const EndedPhase&, const EndedPhase&) = default;
};

using Phase = std::variant<NightPhase, DayPhase, EndedPhase>;

std::string describe(const Phase& phase);

// Abstract actions. Night actions are a subset of these.
struct SpeakAction {
  friend auto operator<=>(const SpeakAction&, const SpeakAction&) = default;
};
struct VoteAction {
  PlayerId target;
  friend auto operator<=>(const VoteAction&, const VoteAction&) = default;
};
struct KillAction {
  PlayerId target;
  friend auto operator<=>(const KillAction&, const KillAction&) = default;
};
struct RevealAction {
  PlayerId target;
  friend auto operator<=>(const RevealAction&, const RevealAction&) = default;
};
/// The witch's single concatenated night action. `cure` and `poison` are
/// mutually exclusive; both unset is a pass.
struct WitchAction {
  bool cure = false;
  std::optional<PlayerId> poison;
  friend auto operator<=>(const WitchAction&, const WitchAction&) = default;
};
/// Explicit no-op. Only the seer submits this; a witch pass is WitchAction{}.
struct PassAction {
  friend auto operator<=>(const PassAction&, const PassAction&) = default;
};

using NightAction = std::variant<KillAction, RevealAction, WitchAction, PassAction>;
using Action = std::variant<SpeakAction, VoteAction, KillAction, RevealAction, WitchAction, PassAction>;

Action to_action(const NightAction& night);
std::optional<NightAction> to_night_action(const Action& action);

/// Renders an action in reply-grammar form, e.g. "VOTE P3", "CURE", "PASS".
std::string describe(const Action& action);

}  // namespace werewolf

template <>
struct std::hash<werewolf::PlayerId> {
  std::size_t operator()(werewolf::PlayerId id) const noexcept { return std::hash<int>{}(id.value); }
};
