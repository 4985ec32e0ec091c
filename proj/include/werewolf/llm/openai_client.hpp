#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "werewolf/llm/chat.hpp"

namespace werewolf::llm {

struct EndpointConfig {
  std::string url = "http://127.0.0.1:8000/v1/chat/completions";
  std::string api_key;
  std::string model = "deepseek-chat";
  std::chrono::milliseconds timeout{60'000};
  std::chrono::milliseconds connect_timeout{10'000};
  int max_retries = 2;
  std::chrono::milliseconds backoff{250};  // doubled after each retry

  /// Overrides fields from WEREWOLF_LLM_URL, WEREWOLF_LLM_API_KEY,
  /// WEREWOLF_LLM_MODEL and WEREWOLF_LLM_TIMEOUT_MS when set.
  EndpointConfig with_env() const;
};

/// Client for OpenAI-compatible chat completions. Streaming requests read
/// server-sent events ("data: {...}" lines, terminated by "data: [DONE]").
/// Transport failures are retried with exponential backoff, but only while
/// no token has been delivered.
class OpenAiChatClient final : public ChatBackend {
 public:
  explicit OpenAiChatClient(EndpointConfig config);

  void stream_chat(const ChatRequest& request, const TokenSink& sink) override;
  Completion complete(const ChatRequest& request) override;

  const EndpointConfig& config() const noexcept { return config_; }

  /// Tests replace the sleep between retries.
  std::function<void(std::chrono::milliseconds)> sleeper;

 private:
  EndpointConfig config_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
};

/// Parses one SSE "data:" payload from a chat-completions stream. Returns the
/// delta text (possibly empty) and the finish reason when present; throws
/// std::runtime_error on malformed JSON or shape.
struct SseDelta {
  std::string content;
  std::optional<std::string> finish_reason;
};
SseDelta parse_sse_data(const std::string& data);

}  // namespace werewolf::llm
