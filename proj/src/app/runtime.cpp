#include "werewolf/app/runtime.hpp"

#include <algorithm>
#include <filesystem>

#include "werewolf/llm/cache_bust.hpp"
#include "werewolf/llm/mock_backend.hpp"
#include "werewolf/llm/openai_client.hpp"

namespace werewolf::app {

std::shared_ptr<llm::ChatBackend> make_llm(const AppConfig& config, std::uint64_t mock_seed) {
  std::shared_ptr<llm::ChatBackend> backend;
  switch (config.llm.backend) {
    case LlmBackendKind::Mock:
      backend = std::make_shared<llm::MockChatBackend>(agents::mock_player_responder(mock_seed),
                                                       config.llm.mock_token_delay);
      break;
    case LlmBackendKind::Malformed:
      backend = std::make_shared<llm::MockChatBackend>(agents::malformed_responder(), config.llm.mock_token_delay);
      break;
    case LlmBackendKind::Http:
      backend = std::make_shared<llm::OpenAiChatClient>(config.llm.endpoint);
      break;
  }
  if (config.llm.cache_bust) backend = std::make_shared<llm::CacheBustingBackend>(backend, llm::random_nonce());
  return backend;
}

std::shared_ptr<speech::TtsBackend> make_tts(const AppConfig& config) {
  switch (config.tts.backend) {
    case TtsBackendKind::None: return nullptr;
    case TtsBackendKind::Mock: return std::make_shared<speech::MockTtsBackend>(config.tts.mock);
    case TtsBackendKind::Failing: {
      auto options = config.tts.mock;
      options.fail = true;
      return std::make_shared<speech::MockTtsBackend>(options);
    }
    case TtsBackendKind::Http: return std::make_shared<speech::HttpTtsBackend>(config.tts.http);
  }
  return nullptr;
}

GameRun run_game(const AppConfig& config, std::uint64_t seed, RunHooks hooks) {
  GameConfig game = config.game;
  game.rng_seed = seed;
  const auto bindings = config.resolved_bindings();
  const bool needs_llm = std::any_of(bindings.begin(), bindings.end(), [](const auto& b) {
    return std::holds_alternative<agents::LlmBinding>(b.kind);
  });

  session::AgentEnvironment env;
  if (needs_llm) env.llm = make_llm(config, seed);
  env.llm_defaults = config.llm.agent;
  env.llm_defaults.model = config.llm.endpoint.model;
  env.seats = std::move(hooks.seats);
  env.human_deadline = config.session.human_deadline;

  session::SessionDeps deps;
  deps.agents = session::make_agents(bindings, env);
  deps.tts = make_tts(config);
  deps.sink = std::move(hooks.sink);
  deps.voices = config.voices;

  session::Session s(game, bindings, std::move(deps), config.session_options());
  for (auto& l : hooks.listeners) s.add_listener(std::move(l));
  GameRun run;
  run.record = s.run();
  run.stats = s.stats();
  const auto rep = session::replay(run.record);
  run.replay_ok = rep.ok;
  run.final_round = run.record.outcome ? run.record.outcome->final_round : rep.state.round;

  if (!config.session.record_dir.empty()) {
    std::filesystem::create_directories(config.session.record_dir);
    session::save(std::filesystem::path(config.session.record_dir) / ("game-" + std::to_string(seed) + ".jsonl"),
                  run.record);
  }
  return run;
}

nlohmann::json summarize(const std::vector<GameRun>& runs) {
  nlohmann::json wins = nlohmann::json::object();
  nlohmann::json reasons = nlohmann::json::object();
  nlohmann::json list = nlohmann::json::array();
  std::size_t fallbacks = 0, degradations = 0, replay_failures = 0;
  int min_round = 0, max_round = 0;
  double sum_round = 0;
  for (const auto& r : runs) {
    nlohmann::json item{{"seed", r.record.config.rng_seed},
                        {"final_digest", r.record.final_digest},
                        {"rounds", r.final_round},
                        {"fallbacks", r.stats.fallbacks},
                        {"degradations", r.stats.degradations},
                        {"replay_ok", r.replay_ok}};
    if (r.record.outcome) {
      const auto winner = std::string(to_string(r.record.outcome->winner));
      const auto reason = std::string(to_string(r.record.outcome->reason));
      wins[winner] = wins.value(winner, 0) + 1;
      reasons[reason] = reasons.value(reason, 0) + 1;
      item["winner"] = winner;
      item["reason"] = reason;
    }
    list.push_back(std::move(item));
    fallbacks += r.stats.fallbacks;
    degradations += r.stats.degradations;
    replay_failures += !r.replay_ok;
    min_round = list.size() == 1 ? r.final_round : std::min(min_round, r.final_round);
    max_round = std::max(max_round, r.final_round);
    sum_round += r.final_round;
  }
  return nlohmann::json{
      {"games", runs.size()},
      {"wins", wins},
      {"reasons", reasons},
      {"rounds", {{"min", min_round}, {"max", max_round}, {"mean", runs.empty() ? 0.0 : sum_round / runs.size()}}},
      {"fallbacks", fallbacks},
      {"degradations", degradations},
      {"replay_failures", replay_failures},
      {"runs", list},
  };
}

}  // namespace werewolf::app

namespace werewolf::app {

namespace {

std::string name_of(const session::SessionRecord& record, PlayerId id) {
  const auto& names = record.config.player_names;
  std::string out = "P" + std::to_string(id.value);
  if (id.value >= 1 && static_cast<std::size_t>(id.value) <= names.size()) out += " (" + names[id.index()] + ")";
  return out;
}

std::string ids(const std::vector<PlayerId>& players) {
  std::string out;
  for (auto p : players) out += (out.empty() ? "P" : ", P") + std::to_string(p.value);
  return out.empty() ? "nobody" : out;
}

std::string render_event(const session::SessionRecord& record, const session::SessionEvent& e) {
  return std::visit(
      [&](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PhaseChange>) {
          return "-- " + describe(p.phase);
        } else if constexpr (std::is_same_v<T, RoleAssignment>) {
          return name_of(record, p.player) + " is a " + std::string(to_string(p.role));
        } else if constexpr (std::is_same_v<T, NightActionSubmitted>) {
          return name_of(record, p.player) + " chose " + describe(std::visit([](const auto& a) -> Action { return a; }, p.action));
        } else if constexpr (std::is_same_v<T, SeerReveal>) {
          return "P" + std::to_string(p.target.value) + " is revealed as " + std::string(to_string(p.role));
        } else if constexpr (std::is_same_v<T, WerewolfKill>) {
          return "werewolves settled on P" + std::to_string(p.target.value);
        } else if constexpr (std::is_same_v<T, WitchNight>) {
          return std::string("witch: ") + (p.cured ? "cured" : "no cure") +
                 (p.poisoned ? ", poisoned P" + std::to_string(p.poisoned->value) : ", no poison");
        } else if constexpr (std::is_same_v<T, NightResult>) {
          return "Night " + std::to_string(p.round) + " deaths: " + ids(p.deaths);
        } else if constexpr (std::is_same_v<T, StatementChunk>) {
          return "  [" + std::to_string(p.utterance) + "." + std::to_string(p.index) + "] " + p.text;
        } else if constexpr (std::is_same_v<T, StatementDone>) {
          return name_of(record, p.speaker) + ": " + p.text;
        } else if constexpr (std::is_same_v<T, VoteResult>) {
          std::string out = "Votes:";
          for (const auto& [voter, target] : p.votes) {
            out += " P" + std::to_string(voter.value) + "->P" + std::to_string(target.value);
          }
          if (p.eliminated) return out + "; eliminated " + name_of(record, *p.eliminated);
          return out + (p.tie ? "; tie, nobody eliminated" : "; nobody eliminated");
        } else if constexpr (std::is_same_v<T, ActionRequest>) {
          return "request to P" + std::to_string(p.player.value) + ": " + p.task;
        } else if constexpr (std::is_same_v<T, Fallback>) {
          return "fallback for P" + std::to_string(p.player.value) + " (" + p.task + "): " + p.action + " because " +
                 p.reason;
        } else if constexpr (std::is_same_v<T, Degradation>) {
          return "speech degraded at " + std::to_string(p.utterance) + "." + std::to_string(p.index) + ": " + p.cause;
        } else {
          return "Outcome: " + std::string(to_string(p.outcome.winner)) + " (" +
                 std::string(to_string(p.outcome.reason)) + ", round " + std::to_string(p.outcome.final_round) +
                 ")";
        }
      },
      e.payload);
}

}  // namespace

std::string render_transcript(const session::SessionRecord& record, bool all) {
  std::string out;
  for (const auto& e : record.events) {
    const bool is_public = e.visibility == Visibility::everyone();
    if (!all && (!is_public || std::holds_alternative<StatementChunk>(e.payload))) continue;
    if (all && !is_public) {
      out += e.visibility.scope == Visibility::Scope::System ? "[system] "
                                                              : "[to P" + std::to_string(e.visibility.addressee.value) + "] ";
    }
    out += render_event(record, e) + "\n";
  }
  return out;
}

std::vector<speech::UtteranceMetrics> resynthesize(const session::SessionRecord& record,
                                                   std::shared_ptr<speech::TtsBackend> tts,
                                                   std::shared_ptr<speech::AudioSink> sink,
                                                   const AppConfig& config) {
  speech::PipelineOptions options = config.session_options().pipeline;
  speech::SpeechPipeline pipeline(std::move(tts), config.voices,
                                  sink ? std::move(sink) : std::make_shared<speech::NullSink>(), options);
  std::vector<std::uint64_t> order;
  for (const auto& e : record.events) {
    const auto* c = std::get_if<StatementChunk>(&e.payload);
    if (!c) continue;
    if (order.empty() || order.back() != c->utterance) {
      if (!order.empty()) pipeline.close(order.back());
      pipeline.open(c->utterance, session::seat_voice(record.bindings, config.voices, c->speaker));
      order.push_back(c->utterance);
    }
    pipeline.submit(speech::SentenceChunk{c->utterance, c->index, c->text, c->is_final});
  }
  if (!order.empty()) pipeline.close(order.back());
  std::vector<speech::UtteranceMetrics> metrics;
  for (auto u : order) metrics.push_back(pipeline.wait(u));
  return metrics;
}

}  // namespace werewolf::app
