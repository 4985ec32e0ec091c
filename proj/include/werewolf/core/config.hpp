#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "werewolf/core/types.hpp"

namespace werewolf {

struct GameConfig {
  std::vector<std::string> player_names;
  std::map<Role, int> role_distribution;
  int max_rounds = 15;
  std::uint64_t rng_seed = 0;
  int witch_cures = 1;
  int witch_poisons = 1;
  bool neutral_aliases = true;

  /// Six players: two werewolves, two villagers, one seer, one witch.
  static GameConfig standard(std::uint64_t seed);

  int player_count() const noexcept { return static_cast<int>(player_names.size()); }

  /// Throws GameError{InvalidConfig} describing the first violated rule.
  void validate() const;

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

}  // namespace werewolf
