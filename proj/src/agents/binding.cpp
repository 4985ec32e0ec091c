#include "werewolf/agents/binding.hpp"

#include <set>
#include <stdexcept>

namespace werewolf::agents {

void to_json(nlohmann::json& j, const AgentBinding& b) {
  j = nlohmann::json{{"player", b.player.value}};
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, LlmBinding>) {
          j["kind"] = "llm";
          j["model"] = k.model;
          j["temperature"] = k.temperature;
          j["max_tokens"] = k.max_tokens;
          j["persona"] = k.persona;
        } else if constexpr (std::is_same_v<T, ScriptedBinding>) {
          j["kind"] = "scripted";
          j["policy"] = std::string(to_string(k.policy));
        } else {
          j["kind"] = "human";
        }
      },
      b.kind);
  j["voice_id"] = b.voice_id;
}

void from_json(const nlohmann::json& j, AgentBinding& b) {
  b.player = PlayerId(j.at("player").get<int>());
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "llm") {
    LlmBinding l;
    l.model = j.value("model", "");
    l.temperature = j.value("temperature", 0.7);
    l.max_tokens = j.value("max_tokens", 512);
    l.persona = j.value("persona", "");
    b.kind = l;
  } else if (kind == "scripted") {
    const auto name = j.value("policy", "random-seeded");
    const auto policy = scripted_policy_from_string(name);
    if (!policy) throw std::invalid_argument("unknown scripted policy: " + name);
    b.kind = ScriptedBinding{*policy};
  } else if (kind == "human") {
    b.kind = HumanBinding{};
  } else {
    throw std::invalid_argument("unknown agent kind: " + kind);
  }
  b.voice_id = j.value("voice_id", "");
}

void validate_bindings(const std::vector<AgentBinding>& bindings, std::size_t player_count) {
  if (bindings.size() != player_count) throw std::invalid_argument("need exactly one binding per player");
  std::set<int> seen;
  for (const auto& b : bindings) {
    if (b.player.value < 1 || static_cast<std::size_t>(b.player.value) > player_count) {
      throw std::invalid_argument("binding for unknown player " + std::to_string(b.player.value));
    }
    if (!seen.insert(b.player.value).second) {
      throw std::invalid_argument("duplicate binding for player " + std::to_string(b.player.value));
    }
  }
}

}  // namespace werewolf::agents
