#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "werewolf/agents/prompt.hpp"
#include "werewolf/agents/reply.hpp"
#include "werewolf/agents/templates.hpp"
#include "werewolf/llm/chat.hpp"
#include "werewolf/llm/mock_backend.hpp"

namespace werewolf::agents {

/// Receives statement text as it becomes available (discussion turns only).
using TextSink = std::function<void(std::string_view)>;

struct AgentTurn {
  ParsedReply reply;                       // action is always legal
  std::optional<std::string> fallback;     // reason, when the fallback path was taken
  int attempts = 0;                        // backend calls / human submissions
};

class Agent {
 public:
  virtual ~Agent() = default;
  /// Called before the turn is announced to clients.
  virtual void prepare(const PromptContext&) {}
  virtual AgentTurn act(const PromptContext& ctx, const TextSink& on_text) = 0;
  virtual bool is_human() const { return false; }
};

/// Seeded-uniform legal action (from ctx.fallback_seed) plus the canned
/// statement. Discussion turns stream the statement through on_text unless
/// `spoken` already holds text, which is then kept as the statement.
AgentTurn fallback_turn(const PromptContext& ctx, std::string reason, const TextSink& on_text,
                        const TemplateSet& templates = TemplateSet::builtin(), std::string spoken = {});

struct LlmAgentOptions {
  std::string model;
  double temperature = 0.7;
  int max_tokens = 512;
  int retry_budget = 2;
};

/// Prompts a chat backend, streams the statement, re-prompts with a hint on
/// unusable replies and falls back once the budget is spent or the backend
/// fails.
class LlmAgent final : public Agent {
 public:
  LlmAgent(std::shared_ptr<llm::ChatBackend> backend, LlmAgentOptions options,
           const TemplateSet& templates = TemplateSet::builtin());

  AgentTurn act(const PromptContext& ctx, const TextSink& on_text) override;

 private:
  std::shared_ptr<llm::ChatBackend> backend_;
  LlmAgentOptions options_;
  TemplateSet templates_;
};

enum class ScriptedPolicy { LowestIdTarget, RandomSeeded, AlwaysPass };

std::string_view to_string(ScriptedPolicy policy) noexcept;
std::optional<ScriptedPolicy> scripted_policy_from_string(std::string_view name) noexcept;

/// Deterministic agent for tests and headless runs. RandomSeeded draws from
/// ctx.fallback_seed; AlwaysPass passes where legal and otherwise picks the
/// lowest id.
class ScriptedAgent final : public Agent {
 public:
  explicit ScriptedAgent(ScriptedPolicy policy) : policy_(policy) {}
  AgentTurn act(const PromptContext& ctx, const TextSink& on_text) override;
  ScriptedPolicy policy() const noexcept { return policy_; }

 private:
  ScriptedPolicy policy_;
};

/// Non-speak legal actions for the view, in engine order.
std::vector<Action> choosable_actions(const PlayerView& view);

// Responders for llm::MockChatBackend.

/// Plays along: picks one of the "Options:" from the prompt (seeded by the
/// prompt text, nonce tags excluded) and writes a multi-clause statement.
llm::MockChatBackend::Responder mock_player_responder(std::uint64_t seed);

/// Never produces a usable reply.
llm::MockChatBackend::Responder malformed_responder();

}  // namespace werewolf::agents
