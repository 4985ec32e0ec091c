#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "werewolf/agents/alias.hpp"
#include "werewolf/agents/templates.hpp"
#include "werewolf/core/state.hpp"
#include "werewolf/llm/chat.hpp"

namespace werewolf::agents {

enum class Task { Discuss, Vote, NightAction };

std::string_view to_string(Task task) noexcept;
std::optional<Task> task_from_string(std::string_view name) noexcept;

/// The task a player faces in the view's phase (nullopt when it has none,
/// e.g. a villager at night or an eliminated player).
std::optional<Task> task_for(const PlayerView& view);

struct PromptOptions {
  std::size_t history_char_budget = 6000;
  bool neutral_aliases = true;
};

struct PromptContext {
  PlayerView view;
  Task task = Task::Discuss;
  AliasMap aliases{{}};
  PromptOptions options;
  std::uint64_t fallback_seed = 0;  // seeds the fallback action
};

/// How a player is named in prompts: "P3", or "Casey (P3)" with aliases off.
std::string label(const PromptContext& ctx, PlayerId id);

// Renderings of the role-private fields. Prompt leak tests scan for these.
std::string render_fellow_werewolves(const std::vector<PlayerId>& fellows);
std::string render_werewolf_log(const std::vector<WerewolfKill>& log);
std::string render_seer_dict(const std::map<PlayerId, Role>& dict);
std::string render_witch_log(const std::vector<WitchNight>& log);

/// Public history lines, most recent first. When the text exceeds the
/// budget, the oldest statements go first, then phase markers; night deaths,
/// vote results and the outcome are always kept.
std::vector<std::string> render_history(const PromptContext& ctx);

/// Legal options in reply-grammar form, e.g. "VOTE P1 | VOTE P3".
std::string render_options(const PlayerView& view);

/// The reply-format part of the user message for ctx.task.
std::string format_instructions(const PromptContext& ctx, const TemplateSet& templates = TemplateSet::builtin());

/// System + user messages. Deterministic in ctx.
std::vector<llm::ChatMessage> build_prompt(const PromptContext& ctx,
                                           const TemplateSet& templates = TemplateSet::builtin());

}  // namespace werewolf::agents
