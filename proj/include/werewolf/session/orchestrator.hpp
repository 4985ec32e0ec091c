#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "werewolf/agents/agent.hpp"
#include "werewolf/agents/binding.hpp"
#include "werewolf/agents/human.hpp"
#include "werewolf/core/game.hpp"
#include "werewolf/session/record.hpp"
#include "werewolf/speech/pipeline.hpp"
#include "werewolf/speech/segmenter.hpp"
#include "werewolf/speech/tts.hpp"
#include "werewolf/speech/voices.hpp"

namespace werewolf::session {

/// Logical timestamps equal the event's seq, which keeps records of seeded
/// games byte-identical. Wall timestamps are milliseconds since the session
/// started.
enum class TimeSource { Logical, Wall };

struct SessionOptions {
  agents::PromptOptions prompt;
  TimeSource time = TimeSource::Logical;
  std::chrono::milliseconds human_deadline{120'000};
  speech::SegmenterOptions segmenter;
  speech::PipelineOptions pipeline;
  bool concurrent_werewolves = true;
};

/// Everything the session needs besides the game config and bindings.
struct SessionDeps {
  std::vector<std::shared_ptr<agents::Agent>> agents;  // agents[i] plays P(i+1)
  std::shared_ptr<speech::TtsBackend> tts;             // null disables speech
  std::shared_ptr<speech::AudioSink> sink;             // null: NullSink
  speech::VoiceRegistry voices = speech::VoiceRegistry::builtin();
};

/// Inputs for building agents from bindings.
struct AgentEnvironment {
  std::shared_ptr<llm::ChatBackend> llm;  // required when any binding is LLM
  agents::LlmAgentOptions llm_defaults;
  agents::TemplateSet templates = agents::TemplateSet::builtin();
  std::map<PlayerId, std::shared_ptr<agents::HumanSeat>> seats;  // filled for human bindings
  std::chrono::milliseconds human_deadline{120'000};
};

std::vector<std::shared_ptr<agents::Agent>> make_agents(const std::vector<agents::AgentBinding>& bindings,
                                                        AgentEnvironment& env);

/// Per-decision seed for fallbacks and seeded scripted agents.
std::uint64_t decision_seed(std::uint64_t game_seed, int round, PlayerId player, agents::Task task);

/// The binding's voice when the registry knows it, else the seat default.
std::string seat_voice(const std::vector<agents::AgentBinding>& bindings, const speech::VoiceRegistry& voices,
                       PlayerId player);

struct SessionStats {
  std::vector<speech::UtteranceMetrics> utterances;
  std::size_t fallbacks = 0;
  std::size_t degradations = 0;
};

using EventListener = std::function<void(const SessionEvent&)>;

/// Runs one game: night (werewolves, then seer, then witch), resolution,
/// judgement, discussion in speaking order with streamed speech, then the
/// vote. Owns the GameState; every mutation happens on the run() thread.
class Session {
 public:
  Session(GameConfig config, std::vector<agents::AgentBinding> bindings, SessionDeps deps,
          SessionOptions options = {});
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  /// Listeners are called synchronously, in seq order, from the run() thread.
  void add_listener(EventListener listener);

  SessionRecord run();

  const SessionStats& stats() const noexcept { return stats_; }

 private:
  void emit(Visibility visibility, EventPayload payload);
  void emit_all(const std::vector<GameEvent>& events);
  agents::PromptContext context_for(PlayerId player, agents::Task task) const;
  agents::AgentTurn ask(PlayerId player, agents::Task task, const agents::TextSink& on_text,
                        const agents::PromptContext& ctx);
  void note_turn(PlayerId player, agents::Task task, const agents::AgentTurn& turn);
  void announce_request(PlayerId player, agents::Task task, const agents::PromptContext& ctx);
  void run_night();
  void run_discussion_turn(PlayerId speaker);
  void run_vote();

  GameConfig config_;
  std::vector<agents::AgentBinding> bindings_;
  SessionDeps deps_;
  SessionOptions options_;
  agents::AliasMap aliases_;
  GameState state_;
  std::vector<SessionEvent> events_;
  std::vector<EventListener> listeners_;
  std::unique_ptr<speech::SpeechPipeline> pipeline_;
  std::uint64_t next_utterance_ = 0;
  std::chrono::steady_clock::time_point started_;
  SessionStats stats_;
};

}  // namespace werewolf::session
