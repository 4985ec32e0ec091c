#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "werewolf/agents/binding.hpp"
#include "werewolf/core/config.hpp"
#include "werewolf/llm/openai_client.hpp"
#include "werewolf/session/orchestrator.hpp"
#include "werewolf/speech/tts.hpp"
#include "werewolf/speech/voices.hpp"

namespace werewolf::app {

// "mock" answers with plausible canned replies, "malformed" never produces a
// usable action, "http" talks to an OpenAI-compatible endpoint.
enum class LlmBackendKind { Mock, Malformed, Http };
enum class TtsBackendKind { None, Mock, Failing, Http };

std::string_view to_string(LlmBackendKind kind) noexcept;
std::string_view to_string(TtsBackendKind kind) noexcept;
LlmBackendKind llm_backend_from_string(std::string_view s);  // throws std::invalid_argument
TtsBackendKind tts_backend_from_string(std::string_view s);

struct LlmSettings {
  LlmBackendKind backend = LlmBackendKind::Mock;
  llm::EndpointConfig endpoint;
  agents::LlmAgentOptions agent;
  bool cache_bust = true;
  std::chrono::microseconds mock_token_delay{0};
};

struct TtsSettings {
  TtsBackendKind backend = TtsBackendKind::None;
  speech::HttpTtsConfig http;
  speech::MockTtsOptions mock;
};

struct SessionSettings {
  session::TimeSource clock = session::TimeSource::Logical;
  std::chrono::milliseconds human_deadline{120'000};
  std::size_t history_char_budget = 6000;
  bool concurrent_werewolves = true;
  std::string record_dir;  // empty: records are not written
};

struct ServerSettings {
  std::string host = "127.0.0.1";
  int port = 8765;
  std::map<PlayerId, std::string> tokens;
  bool wait_for_humans = true;
};

/// Everything a run needs. Every JSON section and key is optional; missing
/// ones keep the defaults below.
struct AppConfig {
  GameConfig game = GameConfig::standard(42);
  agents::AgentKind default_agent = agents::ScriptedBinding{};
  std::vector<agents::AgentBinding> bindings;  // overrides per seat
  LlmSettings llm;
  TtsSettings tts;
  speech::VoiceRegistry voices = speech::VoiceRegistry::builtin();
  speech::SegmenterOptions segmenter;
  std::size_t speech_workers = 2;
  double fallback_chars_per_second = 12.0;
  SessionSettings session;
  ServerSettings server;

  static AppConfig from_json(const nlohmann::json& j);
  static AppConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  /// Applies WEREWOLF_LLM_* and WEREWOLF_TTS_* overrides.
  AppConfig with_env() const;

  /// One binding per seat: the explicit ones, the default kind elsewhere.
  std::vector<agents::AgentBinding> resolved_bindings() const;
  session::SessionOptions session_options() const;
};

}  // namespace werewolf::app
