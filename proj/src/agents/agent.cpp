#include "werewolf/agents/agent.hpp"

#include <algorithm>
#include <sstream>

#include "werewolf/core/game.hpp"
#include "werewolf/core/rng.hpp"
#include "werewolf/llm/cache_bust.hpp"

namespace werewolf::agents {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<PlayerId> target_of(const Action& action) {
  return std::visit(
      [](const auto& a) -> std::optional<PlayerId> {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, VoteAction> || std::is_same_v<T, KillAction> ||
                      std::is_same_v<T, RevealAction>) {
          return a.target;
        } else if constexpr (std::is_same_v<T, WitchAction>) {
          return a.poison;
        } else {
          return std::nullopt;
        }
      },
      action);
}

bool is_pass(const Action& action) {
  if (std::holds_alternative<PassAction>(action)) return true;
  if (const auto* w = std::get_if<WitchAction>(&action)) return !w->cure && !w->poison;
  return false;
}

std::uint64_t fnv1a(std::string_view text, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Word-sized pieces so scripted statements exercise the streaming path.
void stream_words(std::string_view text, const TextSink& on_text) {
  if (!on_text) return;
  for (const auto& piece : llm::MockChatBackend::tokenize(text)) on_text(piece);
}

std::string scripted_statement(const PromptContext& ctx, std::uint64_t pick) {
  const std::string self = label(ctx, ctx.view.self_id);
  const std::string round = std::to_string(ctx.view.round);
  static const char* const kLines[] = {
      "I have no hard evidence yet, so I will watch how everyone votes.",
      "Nobody has said anything decisive; let us compare stories before we vote.",
      "I am a simple villager as far as you know, and I want to hear the quiet players first.",
  };
  return self + " speaking in round " + round + ". " + kLines[pick % std::size(kLines)];
}

}  // namespace

std::vector<Action> choosable_actions(const PlayerView& view) {
  std::vector<Action> out;
  for (auto& a : legal_actions_for(view)) {
    if (!std::holds_alternative<SpeakAction>(a)) out.push_back(std::move(a));
  }
  return out;
}

AgentTurn fallback_turn(const PromptContext& ctx, std::string reason, const TextSink& on_text,
                        const TemplateSet& templates, std::string spoken) {
  AgentTurn turn;
  turn.fallback = std::move(reason);
  if (ctx.task == Task::Discuss) {
    std::string statement = trim(spoken);
    if (statement.empty()) {
      statement = templates.render("fallback_statement", {});
      stream_words(statement, on_text);
    }
    turn.reply.statement_text = std::move(statement);
    return turn;
  }
  const auto options = choosable_actions(ctx.view);
  if (!options.empty()) {
    RngStream rng(ctx.fallback_seed);
    turn.reply.action = options[rng.uniform(options.size())];
  }
  return turn;
}

// --- LlmAgent ----------------------------------------------------------------

LlmAgent::LlmAgent(std::shared_ptr<llm::ChatBackend> backend, LlmAgentOptions options, const TemplateSet& templates)
    : backend_(std::move(backend)), options_(std::move(options)), templates_(templates) {}

AgentTurn LlmAgent::act(const PromptContext& ctx, const TextSink& on_text) {
  auto messages = build_prompt(ctx, templates_);
  const bool discuss = ctx.task == Task::Discuss;
  std::string last_failure;

  for (int attempt = 0; attempt <= options_.retry_budget; ++attempt) {
    llm::ChatRequest req;
    req.messages = messages;
    req.model = options_.model;
    req.temperature = options_.temperature;
    req.max_tokens = options_.max_tokens;
    req.stream = true;

    StatementFilter filter;
    std::string raw;
    std::string spoken;
    std::string pending;  // leading whitespace is held back
    std::optional<llm::StreamError> error;
    auto emit = [&](const std::string& text) {
      if (text.empty()) return;
      if (spoken.empty()) {
        pending += text;
        const auto first = pending.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) return;
        spoken = pending.substr(first);
        pending.clear();
        if (on_text) on_text(spoken);
        return;
      }
      spoken += text;
      if (on_text) on_text(text);
    };

    backend_->stream_chat(req, [&](const llm::TokenEvent& ev) {
      if (const auto* tok = std::get_if<llm::Token>(&ev)) {
        raw += tok->text;
        if (discuss) emit(filter.feed(tok->text));
      } else if (const auto* err = std::get_if<llm::StreamError>(&ev)) {
        error = *err;
      }
    });
    if (discuss) emit(filter.finish());

    if (error) {
      AgentTurn turn = fallback_turn(ctx, "backend-" + std::string(llm::to_string(error->cause)) + ": " + error->message,
                                     on_text, templates_, spoken);
      turn.attempts = attempt + 1;
      turn.reply.raw = raw;
      return turn;
    }

    if (discuss && !trim(spoken).empty()) {
      AgentTurn turn;
      turn.reply = ParsedReply{trim(spoken), std::nullopt, raw};
      turn.attempts = attempt + 1;
      return turn;
    }

    auto parsed = parse_reply(raw, ctx.task, ctx.view, ctx.aliases);
    if (auto* ok = std::get_if<ParsedReply>(&parsed)) {
      AgentTurn turn;
      turn.reply = std::move(*ok);
      turn.attempts = attempt + 1;
      return turn;
    }
    const auto& fail = std::get<ParseFailure>(parsed);
    last_failure = std::string(to_string(fail.kind)) + ": " + fail.hint;
    messages.push_back({"assistant", llm::strip_nonce_tags(raw)});
    messages.push_back(
        {"user", templates_.render("retry", {{"hint", fail.hint}, {"format", format_instructions(ctx, templates_)}})});
  }

  AgentTurn turn = fallback_turn(ctx, "parse-failure: " + last_failure, on_text, templates_);
  turn.attempts = options_.retry_budget + 1;
  return turn;
}

// --- ScriptedAgent -----------------------------------------------------------

std::string_view to_string(ScriptedPolicy policy) noexcept {
  switch (policy) {
    case ScriptedPolicy::LowestIdTarget: return "lowest-id-target";
    case ScriptedPolicy::RandomSeeded: return "random-seeded";
    case ScriptedPolicy::AlwaysPass: return "always-pass";
  }
  return "";
}

std::optional<ScriptedPolicy> scripted_policy_from_string(std::string_view name) noexcept {
  for (auto p : {ScriptedPolicy::LowestIdTarget, ScriptedPolicy::RandomSeeded, ScriptedPolicy::AlwaysPass}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

AgentTurn ScriptedAgent::act(const PromptContext& ctx, const TextSink& on_text) {
  AgentTurn turn;
  turn.attempts = 1;
  if (ctx.task == Task::Discuss) {
    const std::uint64_t pick = policy_ == ScriptedPolicy::RandomSeeded ? RngStream(ctx.fallback_seed).next() : 0;
    turn.reply.statement_text = scripted_statement(ctx, pick);
    stream_words(turn.reply.statement_text, on_text);
    return turn;
  }
  const auto options = choosable_actions(ctx.view);
  if (options.empty()) return turn;

  auto lowest = [&]() -> Action {
    const Action* best = nullptr;
    for (const auto& a : options) {
      const auto t = target_of(a);
      if (!t) continue;
      if (!best || *t < *target_of(*best)) best = &a;
    }
    return best ? *best : options.front();
  };

  switch (policy_) {
    case ScriptedPolicy::LowestIdTarget:
      turn.reply.action = lowest();
      break;
    case ScriptedPolicy::RandomSeeded: {
      RngStream rng(ctx.fallback_seed);
      turn.reply.action = options[rng.uniform(options.size())];
      break;
    }
    case ScriptedPolicy::AlwaysPass: {
      const auto it = std::find_if(options.begin(), options.end(), is_pass);
      turn.reply.action = it != options.end() ? *it : lowest();
      break;
    }
  }
  turn.reply.raw = "ACTION: " + describe(*turn.reply.action);
  return turn;
}

// --- mock responders ---------------------------------------------------------

llm::MockChatBackend::Responder mock_player_responder(std::uint64_t seed) {
  return [seed](const llm::ChatRequest& req) -> std::string {
    std::string prompt;
    for (const auto& m : req.messages) prompt += llm::strip_nonce_tags(m.content);
    RngStream rng(fnv1a(prompt, seed));

    std::string user;
    for (auto it = req.messages.rbegin(); it != req.messages.rend(); ++it) {
      if (it->role == "user") {
        user = it->content;
        break;
      }
    }
    std::vector<std::string> options;
    std::istringstream lines(user);
    for (std::string line; std::getline(lines, line);) {
      if (line.rfind("Options: ", 0) != 0) continue;
      std::string rest = line.substr(9);
      for (std::size_t pos = 0; pos <= rest.size();) {
        auto bar = rest.find(" | ", pos);
        if (bar == std::string::npos) bar = rest.size();
        if (bar > pos) options.push_back(rest.substr(pos, bar - pos));
        pos = bar + 3;
      }
    }

    static const char* const kOpeners[] = {
        "I have been listening carefully, and one thing bothers me.",
        "Let me be direct about what I saw last round.",
        "This is a hard one, so I will keep it short.",
    };
    static const char* const kMiddles[] = {
        "Some of you changed your story quickly, and that deserves a closer look.",
        "The quiet players worry me more than the loud ones; silence is cheap cover.",
        "If we split our votes again, the wolves win for free.",
    };
    std::string text = std::string(kOpeners[rng.uniform(std::size(kOpeners))]) + " " +
                       kMiddles[rng.uniform(std::size(kMiddles))];
    if (options.empty()) return text;
    return text + "\nACTION: " + options[rng.uniform(options.size())];
  };
}

llm::MockChatBackend::Responder malformed_responder() {
  return [](const llm::ChatRequest&) -> std::string { return "ACTION: DANCE P99"; };
}

}  // namespace werewolf::agents
