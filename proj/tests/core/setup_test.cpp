#include <gtest/gtest.h>

#include <algorithm>

#include "werewolf/core/error.hpp"
#include "werewolf/core/game.hpp"
#include "werewolf/core/serialize.hpp"

namespace werewolf {
namespace {

TEST(NewGame, StandardSixPlayerConfig) {
  const GameState s = new_game(GameConfig::standard(42));
  ASSERT_EQ(s.players.size(), 6u);
  EXPECT_EQ(s.players_with_role(Role::Werewolf).size(), 2u);
  EXPECT_EQ(s.players_with_role(Role::Villager).size(), 2u);
  EXPECT_EQ(s.players_with_role(Role::Seer).size(), 1u);
  EXPECT_EQ(s.players_with_role(Role::Witch).size(), 1u);
  EXPECT_EQ(s.phase, Phase{NightPhase{1}});
  EXPECT_EQ(s.round, 1);
  EXPECT_EQ(s.num_cure, 1);
  EXPECT_EQ(s.num_poison, 1);
  EXPECT_TRUE(s.game_status);
  EXPECT_TRUE(s.log.empty());
  EXPECT_TRUE(s.werewolf_log.empty());
  EXPECT_TRUE(s.witch_log.empty());
  EXPECT_TRUE(s.seer_dict.empty());
  for (std::size_t i = 0; i < s.players.size(); ++i) {
    EXPECT_EQ(s.players[i].id, PlayerId::from_index(i));
    EXPECT_TRUE(s.players[i].active());
    EXPECT_FALSE(s.players[i].elimination_cause);
  }
}

TEST(NewGame, RoleCountMismatchIsRejected) {
  GameConfig config = GameConfig::standard(1);
  config.role_distribution[Role::Villager] = 1;  // 5 roles, 6 names
  try {
    new_game(config);
    FAIL() << "expected invalid-config";
  } catch (const GameError& e) {
    EXPECT_EQ(e.code(), GameErrorCode::InvalidConfig);
    EXPECT_NE(std::string(e.what()).find("sum to 5"), std::string::npos);
  }
}

TEST(NewGame, OtherInvalidConfigs) {
  auto expect_invalid = [](GameConfig c) {
    EXPECT_THROW(new_game(c), GameError);
  };
  GameConfig no_wolves = GameConfig::standard(1);
  no_wolves.role_distribution = {{Role::Villager, 4}, {Role::Seer, 1}, {Role::Witch, 1}};
  expect_invalid(no_wolves);

  GameConfig all_wolves = GameConfig::standard(1);
  all_wolves.role_distribution = {{Role::Werewolf, 6}};
  expect_invalid(all_wolves);

  GameConfig two_seers = GameConfig::standard(1);
  two_seers.role_distribution = {{Role::Werewolf, 2}, {Role::Villager, 1}, {Role::Seer, 2}, {Role::Witch, 1}};
  expect_invalid(two_seers);

  GameConfig zero_rounds = GameConfig::standard(1);
  zero_rounds.max_rounds = 0;
  expect_invalid(zero_rounds);

  GameConfig dup_names = GameConfig::standard(1);
  dup_names.player_names[1] = dup_names.player_names[0];
  expect_invalid(dup_names);
}

TEST(NewGame, SameConfigGivesIdenticalSerializedState) {
  const auto a = canonical_dump(new_game(GameConfig::standard(7)));
  const auto b = canonical_dump(new_game(GameConfig::standard(7)));
  EXPECT_EQ(a, b);
}

TEST(NewGame, SeedsPermuteTheRoleMultiset) {
  std::set<std::vector<Role>> layouts;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = new_game(GameConfig::standard(seed));
    std::vector<Role> roles;
    for (const auto& p : s.players) roles.push_back(p.role);
    auto sorted = roles;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<Role>{Role::Werewolf, Role::Werewolf, Role::Villager, Role::Villager, Role::Seer,
                                         Role::Witch}));
    layouts.insert(roles);
  }
  EXPECT_GT(layouts.size(), 20u);
}

TEST(NewGame, OpeningEventsArePrivateRoleCards) {
  const auto s = new_game(GameConfig::standard(3));
  const auto events = opening_events(s);
  ASSERT_EQ(events.size(), s.players.size() + 1);
  for (std::size_t i = 0; i < s.players.size(); ++i) {
    const auto& card = std::get<RoleAssignment>(events[i].payload);
    EXPECT_EQ(events[i].visibility, Visibility::only(card.player));
    EXPECT_EQ(card.role, s.player(card.player).role);
    EXPECT_EQ(card.fellow_werewolves.size(), card.role == Role::Werewolf ? 1u : 0u);
  }
  EXPECT_EQ(events.back().visibility, Visibility::everyone());
}

TEST(Serialization, StateRoundTripsThroughJson) {
  auto s = new_game(GameConfig::standard(11));
  const Json j = s;
  for (const char* key : {"log", "werewolf_log", "witch_log", "seer_dict", "num_cure", "num_poison", "round",
                          "game_status", "players", "phase", "pending_night"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  const auto back = j.get<GameState>();
  EXPECT_EQ(back, s);
  EXPECT_EQ(state_digest(back), state_digest(s));
  EXPECT_EQ(state_digest(s).size(), 64u);
}

}  // namespace
}  // namespace werewolf
