#pragma once

// Private-field material of a game, keyed by the role allowed to see it, and
// a substring scanner for prompts and wire frames.

#include <string>
#include <vector>

#include "werewolf/agents/prompt.hpp"
#include "werewolf/agents/templates.hpp"
#include "werewolf/core/serialize.hpp"

namespace werewolf::testing {

struct Secret {
  Role owner;
  std::string text;
};

/// Heading line of a private_* template up to its first placeholder.
inline std::string template_heading(const std::string& name) {
  const auto& src = agents::TemplateSet::builtin().source(name);
  return src.substr(0, src.find("{{"));
}

inline std::vector<Secret> private_secrets(const GameState& s) {
  std::vector<Secret> out;
  out.push_back({Role::Werewolf, template_heading("private_werewolf")});
  out.push_back({Role::Werewolf, "Previous Werewolf kills"});
  out.push_back({Role::Seer, template_heading("private_seer")});
  out.push_back({Role::Witch, template_heading("private_witch")});
  for (const auto& k : s.werewolf_log) {
    out.push_back({Role::Werewolf, agents::render_werewolf_log({k})});
    out.push_back({Role::Werewolf, Json(k).dump()});
  }
  for (const auto& [id, role] : s.seer_dict) {
    out.push_back({Role::Seer, agents::render_seer_dict({{id, role}})});
    const std::string j = seer_dict_to_json({{id, role}}).dump();
    out.push_back({Role::Seer, j.substr(1, j.size() - 2)});
  }
  for (const auto& w : s.witch_log) {
    out.push_back({Role::Witch, agents::render_witch_log({w})});
    out.push_back({Role::Witch, Json(w).dump()});
  }
  return out;
}

/// Secrets of other roles found in `text`.
inline std::vector<std::string> leaks(const std::string& text, const std::vector<Secret>& secrets, Role viewer) {
  std::vector<std::string> found;
  for (const auto& secret : secrets) {
    if (secret.owner == viewer || secret.text.empty()) continue;
    if (text.find(secret.text) != std::string::npos) found.push_back(secret.text);
  }
  return found;
}

}  // namespace werewolf::testing
