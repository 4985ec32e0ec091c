#pragma once

// Test-only helpers for building game states with known roles and for
// driving games with random legal actions.

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "werewolf/core/game.hpp"

namespace werewolf::testing {

/// Fresh game whose roles are exactly `roles` in id order (P1 gets roles[0]).
inline GameState game_with_roles(const std::vector<Role>& roles, std::uint64_t seed = 1, int max_rounds = 15) {
  GameConfig config;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    config.player_names.push_back("Player" + std::to_string(i + 1));
    ++config.role_distribution[roles[i]];
  }
  config.rng_seed = seed;
  config.max_rounds = max_rounds;
  GameState s = new_game(config);
  for (std::size_t i = 0; i < roles.size(); ++i) s.players[i].role = roles[i];
  return s;
}

/// W W V V S Witch in id order.
inline GameState standard_game(std::uint64_t seed = 1) {
  return game_with_roles({Role::Werewolf, Role::Werewolf, Role::Villager, Role::Villager, Role::Seer, Role::Witch},
                         seed);
}

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

struct TraceObserver {
  std::function<void(const GameState&)> on_state;
  std::function<void(const GameEvent&)> on_event;
};

/// Plays a whole game with uniformly random legal actions, calling the
/// observer after every operation. Returns the final state.
inline GameState play_random_game(GameState s, std::mt19937_64& rng, const TraceObserver& obs = {}) {
  auto emit = [&](const std::vector<GameEvent>& events) {
    if (obs.on_event) {
      for (const auto& e : events) obs.on_event(e);
    }
  };
  auto seen = [&](const GameState& st) {
    if (obs.on_state) obs.on_state(st);
  };
  emit(opening_events(s));
  seen(s);
  while (s.game_status) {
    if (std::holds_alternative<NightPhase>(s.phase)) {
      while (auto turn = night_turn(s)) {
        for (PlayerId id : s.active_players()) {
          if (s.player(id).role != *turn) continue;
          if (*turn == Role::Werewolf && s.pending_night.werewolf_choices.contains(id)) continue;
          auto legal = legal_actions(s, id);
          s = submit_night_action(s, id, *to_night_action(pick(rng, legal)));
          seen(s);
        }
      }
      auto t = resolve_night(s);
      s = std::move(t.state);
      emit(t.events);
      seen(s);
    } else if (const auto* day = std::get_if<DayPhase>(&s.phase)) {
      if (day->stage == DayStage::Discussion) {
        auto speaker = next_speaker(s);
        auto t = record_statement(s, *speaker, "I am watching " + alias_of(*speaker) + "'s neighbours.");
        s = std::move(t.state);
        emit(t.events);
      } else {
        std::map<PlayerId, PlayerId> votes;
        for (PlayerId voter : s.active_players()) {
          votes[voter] = std::get<VoteAction>(pick(rng, legal_actions(s, voter))).target;
        }
        auto t = process_voting(s, votes);
        s = std::move(t.state);
        emit(t.events);
      }
      seen(s);
    }
  }
  return s;
}

}  // namespace werewolf::testing
