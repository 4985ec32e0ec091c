#include "werewolf/core/types.hpp"

#include "werewolf/core/error.hpp"
#include "werewolf/core/events.hpp"

namespace werewolf {

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::Werewolf: return "Werewolf";
    case Role::Villager: return "Villager";
    case Role::Seer: return "Seer";
    case Role::Witch: return "Witch";
  }
  return "?";
}

std::optional<Role> role_from_string(std::string_view name) noexcept {
  for (Role r : kAllRoles) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::string alias_of(PlayerId id) { return "P" + std::to_string(id.value); }

std::string_view to_string(EliminationCause cause) noexcept {
  switch (cause) {
    case EliminationCause::WerewolfKill: return "WerewolfKill";
    case EliminationCause::Poison: return "Poison";
    case EliminationCause::Vote: return "Vote";
  }
  return "?";
}

std::string_view to_string(Winner winner) noexcept {
  switch (winner) {
    case Winner::WerewolfTeam: return "WerewolfTeam";
    case Winner::VillageTeam: return "VillageTeam";
    case Winner::Draw: return "Draw";
  }
  return "?";
}

std::string_view to_string(OutcomeReason reason) noexcept {
  switch (reason) {
    case OutcomeReason::WerewolvesEliminated: return "WerewolvesEliminated";
    case OutcomeReason::WerewolfParity: return "WerewolfParity";
    case OutcomeReason::MaxRoundsReached: return "MaxRoundsReached";
  }
  return "?";
}

std::string_view to_string(GameErrorCode code) noexcept {
  switch (code) {
    case GameErrorCode::InvalidConfig: return "invalid-config";
    case GameErrorCode::UnknownPlayer: return "unknown-player";
    case GameErrorCode::WrongPhase: return "wrong-phase";
    case GameErrorCode::IllegalAction: return "illegal-action";
    case GameErrorCode::DuplicateSubmission: return "duplicate-submission";
    case GameErrorCode::MissingSubmission: return "missing-required-submission";
    case GameErrorCode::OutOfTurn: return "out-of-turn";
    case GameErrorCode::EliminatedSpeaker: return "eliminated-speaker";
    case GameErrorCode::MissingVote: return "missing-vote";
    case GameErrorCode::InactiveTarget: return "inactive-target";
    case GameErrorCode::InactiveVoter: return "inactive-voter";
    case GameErrorCode::ReplayMismatch: return "replay-mismatch";
  }
  return "?";
}

std::string describe(const Phase& phase) {
  struct Visitor {
    std::string operator()(const NightPhase& p) const { return "Night " + std::to_string(p.round); }
    std::string operator()(const DayPhase& p) const {
      return "Day " + std::to_string(p.round) + (p.stage == DayStage::Discussion ? " (discussion)" : " (voting)");
    }
    std::string operator()(const EndedPhase& p) const {
      return "Ended (" + std::string(to_string(p.outcome.winner)) + ")";
    }
  };
  return std::visit(Visitor{}, phase);
}

Action to_action(const NightAction& night) {
  return std::visit([](const auto& a) -> Action { return a; }, night);
}

std::optional<NightAction> to_night_action(const Action& action) {
  struct Visitor {
    std::optional<NightAction> operator()(const KillAction& a) const { return a; }
    std::optional<NightAction> operator()(const RevealAction& a) const { return a; }
    std::optional<NightAction> operator()(const WitchAction& a) const { return a; }
    std::optional<NightAction> operator()(const PassAction& a) const { return a; }
    std::optional<NightAction> operator()(const SpeakAction&) const { return std::nullopt; }
    std::optional<NightAction> operator()(const VoteAction&) const { return std::nullopt; }
  };
  return std::visit(Visitor{}, action);
}

std::string describe(const Action& action) {
  struct Visitor {
    std::string operator()(const SpeakAction&) const { return "SPEAK"; }
    std::string operator()(const VoteAction& a) const { return "VOTE " + alias_of(a.target); }
    std::string operator()(const KillAction& a) const { return "KILL " + alias_of(a.target); }
    std::string operator()(const RevealAction& a) const { return "REVEAL " + alias_of(a.target); }
    std::string operator()(const WitchAction& a) const {
      if (a.cure) return "CURE";
      if (a.poison) return "POISON " + alias_of(*a.poison);
      return "PASS";
    }
    std::string operator()(const PassAction&) const { return "PASS"; }
  };
  return std::visit(Visitor{}, action);
}

std::string_view payload_type(const EventPayload& payload) noexcept {
  struct Visitor {
    std::string_view operator()(const PhaseChange&) const { return "PhaseChange"; }
    std::string_view operator()(const RoleAssignment&) const { return "RoleAssignment"; }
    std::string_view operator()(const NightActionSubmitted&) const { return "NightAction"; }
    std::string_view operator()(const SeerReveal&) const { return "SeerReveal"; }
    std::string_view operator()(const WerewolfKill&) const { return "WerewolfKill"; }
    std::string_view operator()(const WitchNight&) const { return "WitchNight"; }
    std::string_view operator()(const NightResult&) const { return "NightResult"; }
    std::string_view operator()(const StatementChunk&) const { return "StatementChunk"; }
    std::string_view operator()(const StatementDone&) const { return "StatementDone"; }
    std::string_view operator()(const VoteResult&) const { return "VoteResult"; }
    std::string_view operator()(const ActionRequest&) const { return "ActionRequest"; }
    std::string_view operator()(const Fallback&) const { return "Fallback"; }
    std::string_view operator()(const Degradation&) const { return "Degradation"; }
    std::string_view operator()(const OutcomeAnnounced&) const { return "Outcome"; }
  };
  return std::visit(Visitor{}, payload);
}

}  // namespace werewolf
