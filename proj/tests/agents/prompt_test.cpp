#include <gtest/gtest.h>

#include "../support/fixtures.hpp"
#include "werewolf/agents/prompt.hpp"

using namespace werewolf;
using namespace werewolf::agents;
using werewolf::testing::game_with_roles;
using werewolf::testing::standard_game;

namespace {

std::vector<std::string> names_of(const GameState& s) { return s.config.player_names; }

PromptContext ctx_for(const GameState& s, PlayerId id, Task task, PromptOptions options = {}) {
  PromptContext ctx{view_for(s, id), task, AliasMap(names_of(s)), options, 0};
  return ctx;
}

std::string joined(const std::vector<llm::ChatMessage>& msgs) {
  std::string out;
  for (const auto& m : msgs) out += m.content + "\n";
  return out;
}

// Night 1: werewolves P1, P2 kill P4; everybody else passes. Day 1 follows.
GameState after_first_night() {
  GameState s = standard_game();
  s = submit_night_action(s, PlayerId(1), KillAction{PlayerId(4)});
  s = submit_night_action(s, PlayerId(2), KillAction{PlayerId(4)});
  s = submit_night_action(s, PlayerId(5), RevealAction{PlayerId(1)});
  s = submit_night_action(s, PlayerId(6), WitchAction{});
  return resolve_night(s).state;
}

bool yet_to_act(const GameState& s, PlayerId id) {
  switch (s.player(id).role) {
    case Role::Werewolf: return !s.pending_night.werewolf_choices.contains(id);
    case Role::Seer: return !s.pending_night.seer_submitted;
    case Role::Witch: return !s.pending_night.witch_action;
    default: return false;
  }
}

// Werewolves kill the highest id they may; seer and witch pass.
GameState pass_night(GameState s) {
  while (auto turn = night_turn(s)) {
    for (PlayerId id : s.active_players()) {
      if (s.player(id).role != *turn || !yet_to_act(s, id)) continue;
      const auto legal = legal_actions(s, id);
      Action pick = *turn == Role::Werewolf ? legal.back() : Action(PassAction{});
      if (*turn == Role::Witch) pick = WitchAction{};
      s = submit_night_action(s, id, *to_night_action(pick));
    }
  }
  return s;
}

}  // namespace

TEST(Prompt, SameContextRendersIdentically) {
  const GameState s = after_first_night();
  for (int p = 1; p <= 6; ++p) {
    const auto a = build_prompt(ctx_for(s, PlayerId(p), Task::Discuss));
    const auto b = build_prompt(ctx_for(s, PlayerId(p), Task::Discuss));
    EXPECT_EQ(a, b);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0].role, "system");
    EXPECT_EQ(a[1].role, "user");
  }
}

TEST(Prompt, WerewolfSeesPartnersAndKillLog) {
  const GameState s = after_first_night();
  const auto msgs = build_prompt(ctx_for(s, PlayerId(1), Task::Discuss));
  EXPECT_NE(msgs[0].content.find("Werewolf"), std::string::npos);
  const auto& user = msgs[1].content;
  EXPECT_NE(user.find("You know the following players are also Werewolves: P2."), std::string::npos) << user;
  EXPECT_NE(user.find("Previous Werewolf kills: night 1 target P4."), std::string::npos) << user;
  EXPECT_NE(user.find("You are P1"), std::string::npos);
  EXPECT_NE(user.find("round 1"), std::string::npos);
  EXPECT_NE(user.find("P4 was found dead"), std::string::npos);
}

TEST(Prompt, VillagerPromptHasNoPrivateFields) {
  const GameState s = after_first_night();
  const auto text = joined(build_prompt(ctx_for(s, PlayerId(3), Task::Discuss)));
  for (const char* needle : {"also Werewolves", "Werewolf kills", "learned at night", "P1 is a Werewolf", "Cures left",
                             "Your past nights", "target P4"}) {
    EXPECT_EQ(text.find(needle), std::string::npos) << needle;
  }
}

TEST(Prompt, SeerAndWitchSeeTheirOwnFields) {
  const GameState s = after_first_night();
  const auto seer = joined(build_prompt(ctx_for(s, PlayerId(5), Task::Discuss)));
  EXPECT_NE(seer.find("P1 is a Werewolf"), std::string::npos);
  const auto witch = joined(build_prompt(ctx_for(s, PlayerId(6), Task::Discuss)));
  EXPECT_NE(witch.find("Cures left: 1"), std::string::npos);
  EXPECT_NE(witch.find("the werewolves attacked P4"), std::string::npos);
}

TEST(Prompt, VoteAndNightPromptsListOptions) {
  GameState s = standard_game();
  const auto night = build_prompt(ctx_for(s, PlayerId(1), Task::NightAction));
  EXPECT_NE(night[1].content.find("Options: KILL P3 | KILL P4 | KILL P5 | KILL P6"), std::string::npos)
      << night[1].content;
  s = after_first_night();
  for (int p : {1, 2, 3, 5, 6}) {
    if (s.players[p - 1].active()) s = record_statement(s, PlayerId(p), "Hello.").state;
  }
  ASSERT_TRUE(std::holds_alternative<DayPhase>(s.phase));
  const auto vote = build_prompt(ctx_for(s, PlayerId(3), Task::Vote));
  EXPECT_NE(vote[1].content.find("Options: VOTE P1 | VOTE P2 | VOTE P5 | VOTE P6"), std::string::npos)
      << vote[1].content;
}

TEST(Prompt, NoTrueNamesWithAliasesOn) {
  GameConfig config;
  config.player_names = {"Marlowe", "Quennell", "Ada Vance", "Tamsin", "Ishiguro", "Bo"};
  config.role_distribution = {{Role::Werewolf, 2}, {Role::Villager, 2}, {Role::Seer, 1}, {Role::Witch, 1}};
  config.rng_seed = 9;
  GameState s = pass_night(new_game(config));
  s = resolve_night(s).state;
  const auto speaker = *next_speaker(s);
  s = record_statement(s, speaker, "Marlowe and Ada Vance were quiet; Tamsin, Bo and Quennell too.").state;
  for (PlayerId id : s.active_players()) {
    const auto text = joined(build_prompt(ctx_for(s, id, Task::Discuss)));
    for (const auto& n : config.player_names) EXPECT_EQ(text.find(n), std::string::npos) << n << "\n" << text;
  }
  PromptOptions off;
  off.neutral_aliases = false;
  const auto text = joined(build_prompt(ctx_for(s, s.active_players().front(), Task::Discuss, off)));
  EXPECT_NE(text.find("Marlowe"), std::string::npos);
}

TEST(Prompt, HistoryBudgetDropsOldStatementsButKeepsKeyEvents) {
  GameState s = game_with_roles({Role::Werewolf, Role::Villager, Role::Villager, Role::Villager, Role::Seer, Role::Witch});
  for (int round = 0; round < 2; ++round) {
    s = pass_night(s);
    s = resolve_night(s).state;
    if (!s.game_status) break;
    while (auto sp = next_speaker(s)) s = record_statement(s, *sp, std::string(300, 'x')).state;
    std::map<PlayerId, PlayerId> votes;
    std::vector<PlayerId> villagers;
    for (PlayerId v : s.active_players()) {
      if (v != PlayerId(1)) villagers.push_back(v);
    }
    for (PlayerId v : s.active_players()) votes[v] = v == villagers.back() ? villagers.front() : villagers.back();
    s = process_voting(s, votes).state;
  }
  PromptOptions small;
  small.history_char_budget = 400;
  const auto lines = render_history(ctx_for(s, PlayerId(3), Task::Discuss, small));
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(lines.back(), "(older discussion omitted)");
  int key = 0;
  for (const auto& l : lines) {
    EXPECT_EQ(l.find("xxxxxxxxxx"), std::string::npos);
    if (l.find("found dead") != std::string::npos || l.find("vote:") != std::string::npos) ++key;
  }
  EXPECT_GE(key, 3);

  const auto full = render_history(ctx_for(s, PlayerId(3), Task::Discuss));
  EXPECT_NE(full.back(), "(older discussion omitted)");
  // Most recent first.
  const auto& last = full.front();
  EXPECT_TRUE(last.find("vote:") != std::string::npos || last.rfind("Game over", 0) == 0) << last;
}
