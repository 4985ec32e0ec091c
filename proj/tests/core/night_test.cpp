#include <gtest/gtest.h>

#include "../support/fixtures.hpp"
#include "werewolf/core/error.hpp"
#include "werewolf/core/game.hpp"

namespace werewolf {
namespace {

using testing::standard_game;

// P1, P2 werewolves; P3, P4 villagers; P5 seer; P6 witch.
const PlayerId kWolfA{1}, kWolfB{2}, kVillagerA{3}, kVillagerB{4}, kSeer{5}, kWitch{6};

GameErrorCode error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const GameError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected GameError";
  return GameErrorCode::ReplayMismatch;
}

GameState wolves_pick(GameState s, PlayerId a, PlayerId b) {
  s = submit_night_action(s, kWolfA, KillAction{a});
  return submit_night_action(s, kWolfB, KillAction{b});
}

TEST(SubmitNightAction, SeerRevealIsRecorded) {
  auto s = submit_night_action(standard_game(), kSeer, RevealAction{kVillagerA});
  EXPECT_TRUE(s.pending_night.seer_submitted);
  EXPECT_EQ(s.pending_night.seer_target, kVillagerA);
}

TEST(SubmitNightAction, VillagerKillIsIllegal) {
  EXPECT_EQ(error_of([] { submit_night_action(standard_game(), kVillagerA, KillAction{kWolfB}); }),
            GameErrorCode::IllegalAction);
}

TEST(SubmitNightAction, WerewolfCannotSubmitTwice) {
  auto s = submit_night_action(standard_game(), kWolfA, KillAction{kSeer});
  EXPECT_EQ(error_of([&] { submit_night_action(s, kWolfA, KillAction{kWitch}); }), GameErrorCode::DuplicateSubmission);
}

TEST(SubmitNightAction, WerewolfCannotTargetPackOrSelf) {
  auto s = standard_game();
  EXPECT_EQ(error_of([&] { submit_night_action(s, kWolfA, KillAction{kWolfB}); }), GameErrorCode::IllegalAction);
  EXPECT_EQ(error_of([&] { submit_night_action(s, kWolfA, KillAction{kWolfA}); }), GameErrorCode::IllegalAction);
}

TEST(SubmitNightAction, WitchWaitsForTheWerewolves) {
  auto s = standard_game();
  EXPECT_EQ(error_of([&] { submit_night_action(s, kWitch, WitchAction{}); }), GameErrorCode::OutOfTurn);
  s = wolves_pick(s, kVillagerA, kVillagerA);
  s = submit_night_action(s, kWitch, PassAction{});  // normalised to an empty witch action
  EXPECT_EQ(s.pending_night.witch_action, std::optional<WitchAction>(WitchAction{}));
}

TEST(SubmitNightAction, WrongPhase) {
  auto s = standard_game();
  s.phase = DayPhase{1, DayStage::Discussion};
  EXPECT_EQ(error_of([&] { submit_night_action(s, kSeer, RevealAction{kWolfA}); }), GameErrorCode::WrongPhase);
}

TEST(SubmitNightAction, RejectionLeavesStateUntouched) {
  const auto s = standard_game();
  const auto copy = s;
  EXPECT_THROW(submit_night_action(s, kVillagerA, KillAction{kWolfB}), GameError);
  EXPECT_EQ(s, copy);
}

TEST(NightTurn, WerewolvesThenSeerThenWitch) {
  auto s = standard_game();
  EXPECT_EQ(night_turn(s), Role::Werewolf);
  s = wolves_pick(s, kSeer, kSeer);
  EXPECT_EQ(night_turn(s), Role::Seer);
  s = submit_night_action(s, kSeer, PassAction{});
  EXPECT_EQ(night_turn(s), Role::Witch);
  s = submit_night_action(s, kWitch, WitchAction{});
  EXPECT_EQ(night_turn(s), std::nullopt);
}

TEST(ResolveNight, CureCancelsTheKill) {
  auto s = wolves_pick(standard_game(), kVillagerB, kVillagerB);
  s = submit_night_action(s, kWitch, WitchAction{true, std::nullopt});
  auto t = resolve_night(s);
  EXPECT_EQ(t.state.num_cure, 0);
  EXPECT_EQ(t.state.num_poison, 1);
  EXPECT_EQ(t.state.active_players().size(), 6u);
  EXPECT_EQ(std::get<NightResult>(t.state.log.front()).deaths, std::vector<PlayerId>{});
  ASSERT_EQ(t.state.witch_log.size(), 1u);
  EXPECT_TRUE(t.state.witch_log[0].cured);
  EXPECT_EQ(t.state.witch_log[0].kill_target, kVillagerB);
  EXPECT_EQ(t.state.phase, (Phase{DayPhase{1, DayStage::Discussion}}));
}

TEST(ResolveNight, UnopposedKillEliminates) {
  auto t = resolve_night(wolves_pick(standard_game(), kVillagerB, kVillagerB));
  const auto& victim = t.state.player(kVillagerB);
  EXPECT_FALSE(victim.active());
  EXPECT_EQ(victim.elimination_cause, EliminationCause::WerewolfKill);
  EXPECT_EQ(t.state.werewolf_log, (std::vector<WerewolfKill>{{1, kVillagerB}}));
}

TEST(ResolveNight, PoisonEliminatesAlongsideKill) {
  auto s = wolves_pick(standard_game(), kVillagerA, kVillagerA);
  s = submit_night_action(s, kWitch, WitchAction{false, kWolfA});
  auto t = resolve_night(s);
  EXPECT_EQ(t.state.player(kWolfA).elimination_cause, EliminationCause::Poison);
  EXPECT_EQ(t.state.player(kVillagerA).elimination_cause, EliminationCause::WerewolfKill);
  EXPECT_EQ(t.state.num_poison, 0);
  EXPECT_EQ(t.state.num_cure, 1);
}

TEST(ResolveNight, DeathAnnouncementCarriesNoCause) {
  auto s = wolves_pick(standard_game(), kVillagerA, kVillagerA);
  s = submit_night_action(s, kWitch, WitchAction{false, kWolfA});
  auto t = resolve_night(s);
  const auto& result = std::get<NightResult>(t.state.log.front());
  EXPECT_EQ(result.deaths, (std::vector<PlayerId>{kWolfA, kVillagerA}));
  for (const auto& e : t.events) {
    if (e.visibility.scope != Visibility::Scope::Public) continue;
    EXPECT_FALSE(std::holds_alternative<WitchNight>(e.payload));
    EXPECT_FALSE(std::holds_alternative<WerewolfKill>(e.payload));
  }
}

TEST(ResolveNight, SeerLearnsTheTrueRolePrivately) {
  auto s = wolves_pick(standard_game(), kVillagerA, kVillagerA);
  s = submit_night_action(s, kSeer, RevealAction{kWolfB});
  auto t = resolve_night(s);
  EXPECT_EQ(t.state.seer_dict.at(kWolfB), Role::Werewolf);
  bool delivered = false;
  for (const auto& e : t.events) {
    if (const auto* r = std::get_if<SeerReveal>(&e.payload)) {
      EXPECT_EQ(e.visibility, Visibility::only(kSeer));
      EXPECT_EQ(r->role, Role::Werewolf);
      delivered = true;
    }
  }
  EXPECT_TRUE(delivered);
}

TEST(ResolveNight, SeerKilledTonightStillLearnsTheRole) {
  auto s = wolves_pick(standard_game(), kSeer, kSeer);
  s = submit_night_action(s, kSeer, RevealAction{kVillagerA});
  auto t = resolve_night(s);
  EXPECT_FALSE(t.state.player(kSeer).active());
  EXPECT_EQ(t.state.seer_dict.at(kVillagerA), Role::Villager);
}

TEST(ResolveNight, SeerMayRevealTheSamePlayerAgain) {
  auto s = resolve_night(submit_night_action(wolves_pick(standard_game(), kVillagerA, kVillagerA), kSeer,
                                             RevealAction{kWolfA}))
               .state;
  s.phase = NightPhase{2};
  s.round = 2;
  s = wolves_pick(s, kVillagerB, kVillagerB);
  s = submit_night_action(s, kSeer, RevealAction{kWolfA});
  auto t = resolve_night(s);
  EXPECT_EQ(t.state.seer_dict.size(), 1u);
  EXPECT_EQ(t.state.seer_dict.at(kWolfA), Role::Werewolf);
}

TEST(ResolveNight, DisagreeingWolvesResolveToSeededMember) {
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    auto run = [seed] {
      auto s = wolves_pick(standard_game(seed), kVillagerB, kSeer);
      return *s.pending_night.chosen_kill;
    };
    const PlayerId first = run();
    EXPECT_TRUE(first == kVillagerB || first == kSeer);
    EXPECT_EQ(run(), first) << "seed " << seed;
  }
}

TEST(ResolveNight, DisagreementUsesBothChoicesAcrossSeeds) {
  std::set<PlayerId> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    seen.insert(*wolves_pick(standard_game(seed), kVillagerB, kSeer).pending_night.chosen_kill);
  }
  EXPECT_EQ(seen, (std::set<PlayerId>{kVillagerB, kSeer}));
}

TEST(ResolveNight, UnanimousChoiceConsumesNoRandomness) {
  auto s = standard_game();
  const auto draws = s.rng.draws();
  s = wolves_pick(s, kSeer, kSeer);
  EXPECT_EQ(s.rng.draws(), draws);
}

TEST(ResolveNight, MissingWerewolfSubmission) {
  auto s = submit_night_action(standard_game(), kWolfA, KillAction{kSeer});
  EXPECT_EQ(error_of([&] { resolve_night(s); }), GameErrorCode::MissingSubmission);
}

TEST(ResolveNight, WitchMayCureHerself) {
  auto s = wolves_pick(standard_game(), kWitch, kWitch);
  s = submit_night_action(s, kWitch, WitchAction{true, std::nullopt});
  auto t = resolve_night(s);
  EXPECT_TRUE(t.state.player(kWitch).active());
}

TEST(ResolveNight, EndsTheGameWhenParityIsReached) {
  auto s = testing::game_with_roles({Role::Werewolf, Role::Villager, Role::Villager});
  s = submit_night_action(s, kWolfA, KillAction{PlayerId(2)});
  auto t = resolve_night(s);
  EXPECT_FALSE(t.state.game_status);
  const auto* ended = std::get_if<EndedPhase>(&t.state.phase);
  ASSERT_NE(ended, nullptr);
  EXPECT_EQ(ended->outcome.winner, Winner::WerewolfTeam);
  EXPECT_TRUE(std::holds_alternative<OutcomeAnnounced>(t.state.log[t.state.log.size() - 2]));
}

}  // namespace
}  // namespace werewolf
