#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "werewolf/app/config.hpp"
#include "werewolf/llm/chat.hpp"
#include "werewolf/session/orchestrator.hpp"
#include "werewolf/speech/pipeline.hpp"

namespace werewolf::app {

/// The configured chat backend, wrapped for cache busting when enabled.
/// `mock_seed` seeds the mock responder. Null when no binding needs one.
std::shared_ptr<llm::ChatBackend> make_llm(const AppConfig& config, std::uint64_t mock_seed);

/// Null for TtsBackendKind::None.
std::shared_ptr<speech::TtsBackend> make_tts(const AppConfig& config);

struct GameRun {
  session::SessionRecord record;
  session::SessionStats stats;
  bool replay_ok = false;
  int final_round = 0;
};

struct RunHooks {
  std::shared_ptr<speech::AudioSink> sink;  // null: NullSink
  std::map<PlayerId, std::shared_ptr<agents::HumanSeat>> seats;
  std::vector<session::EventListener> listeners;
};

/// One game with the config's seed replaced by `seed`. The record is checked
/// by replay before returning and saved into session.record_dir when set.
GameRun run_game(const AppConfig& config, std::uint64_t seed, RunHooks hooks = {});

/// Outcome statistics over several games:
/// {"games", "wins": {...}, "reasons": {...}, "rounds": {"min","max","mean"},
///  "fallbacks", "degradations", "replay_failures", "runs": [...]}
nlohmann::json summarize(const std::vector<GameRun>& runs);

/// Human-readable transcript of the record's public events, one line each;
/// with `all` every event is shown, tagged with its audience.
std::string render_transcript(const session::SessionRecord& record, bool all = false);

/// Re-synthesizes every recorded statement chunk through `tts` in the
/// recorded order. Returns the per-utterance metrics.
std::vector<speech::UtteranceMetrics> resynthesize(const session::SessionRecord& record,
                                                   std::shared_ptr<speech::TtsBackend> tts,
                                                   std::shared_ptr<speech::AudioSink> sink,
                                                   const AppConfig& config);

}  // namespace werewolf::app
