#include "werewolf/core/config.hpp"

#include <numeric>
#include <set>

#include "werewolf/core/error.hpp"

namespace werewolf {

GameConfig GameConfig::standard(std::uint64_t seed) {
  GameConfig config;
  config.player_names = {"Avery", "Blake", "Casey", "Devon", "Emery", "Finley"};
  config.role_distribution = {{Role::Werewolf, 2}, {Role::Villager, 2}, {Role::Seer, 1}, {Role::Witch, 1}};
  config.rng_seed = seed;
  return config;
}

void GameConfig::validate() const {
  auto fail = [](const std::string& why) { throw GameError(GameErrorCode::InvalidConfig, why); };

  if (player_names.empty()) fail("no players");
  std::set<std::string> unique(player_names.begin(), player_names.end());
  if (unique.size() != player_names.size()) fail("player names must be unique");
  for (const auto& name : player_names) {
    if (name.empty()) fail("player names must be non-empty");
  }

  int total = 0;
  for (const auto& [role, count] : role_distribution) {
    if (count < 0) fail("negative count for " + std::string(to_string(role)));
    total += count;
  }
  if (total != player_count()) {
    fail("role counts sum to " + std::to_string(total) + " but there are " + std::to_string(player_count()) +
         " players");
  }

  auto count_of = [&](Role r) {
    auto it = role_distribution.find(r);
    return it == role_distribution.end() ? 0 : it->second;
  };
  if (count_of(Role::Werewolf) < 1) fail("at least one werewolf is required");
  if (total - count_of(Role::Werewolf) < 1) fail("at least one village-team player is required");
  if (count_of(Role::Seer) > 1) fail("at most one seer");
  if (count_of(Role::Witch) > 1) fail("at most one witch");
  if (max_rounds < 1) fail("max_rounds must be at least 1");
  if (witch_cures < 0 || witch_poisons < 0) fail("witch props must be non-negative");
}

}  // namespace werewolf
