#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "werewolf/agents/agent.hpp"
#include "werewolf/core/types.hpp"

namespace werewolf::agents {

struct LlmBinding {
  std::string model;  // empty: the endpoint's default
  double temperature = 0.7;
  int max_tokens = 512;
  std::string persona;  // display persona; selects the voice, never prompted
  friend bool operator==(const LlmBinding&, const LlmBinding&) = default;
};

struct ScriptedBinding {
  ScriptedPolicy policy = ScriptedPolicy::RandomSeeded;
  friend bool operator==(const ScriptedBinding&, const ScriptedBinding&) = default;
};

struct HumanBinding {
  friend bool operator==(const HumanBinding&, const HumanBinding&) = default;
};

using AgentKind = std::variant<LlmBinding, ScriptedBinding, HumanBinding>;

struct AgentBinding {
  PlayerId player;
  AgentKind kind;
  std::string voice_id;
  friend bool operator==(const AgentBinding&, const AgentBinding&) = default;
};

void to_json(nlohmann::json& j, const AgentBinding& b);
void from_json(const nlohmann::json& j, AgentBinding& b);

/// Exactly one binding per player 1..player_count; throws
/// std::invalid_argument otherwise.
void validate_bindings(const std::vector<AgentBinding>& bindings, std::size_t player_count);

}  // namespace werewolf::agents
