#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "werewolf/core/types.hpp"

namespace werewolf::agents {

/// Bijection between players' true names and their neutral labels "P<id>".
class AliasMap {
 public:
  /// names[i] belongs to player i+1.
  explicit AliasMap(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name_of(PlayerId id) const { return names_.at(id.index()); }
  std::string alias_of(PlayerId id) const { return werewolf::alias_of(id); }

  /// True name -> alias.
  std::optional<std::string> alias_for_name(std::string_view name) const;
  /// Alias -> true name.
  std::optional<std::string> name_for_alias(std::string_view alias) const;

  /// Resolves "P4", "p4", "Player 4" or a true name (case-insensitive) to an
  /// id of this game.
  std::optional<PlayerId> resolve(std::string_view token) const;

  /// Replaces every true name in `text` by its alias, longest names first.
  std::string scrub(std::string_view text) const;

 private:
  std::vector<std::string> names_;
};

}  // namespace werewolf::agents
