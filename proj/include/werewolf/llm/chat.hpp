#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace werewolf::llm {

using Clock = std::chrono::steady_clock;

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  std::string model;
  double temperature = 0.7;
  int max_tokens = 512;
  bool stream = true;
  // Filled in by the session; cache_bust() writes both into the system
  // message.
  std::string session_nonce;
  std::uint64_t request_counter = 0;
};

struct Token {
  std::string text;
  Clock::time_point arrival{};
};

struct Done {
  std::string finish_reason;
};

enum class StreamErrorCause { Timeout, ConnectionFailure, MalformedChunk, HttpStatus };

std::string_view to_string(StreamErrorCause cause) noexcept;

struct StreamError {
  StreamErrorCause cause = StreamErrorCause::ConnectionFailure;
  std::string message;
};

/// A stream is zero or more Token followed by exactly one Done or StreamError.
using TokenEvent = std::variant<Token, Done, StreamError>;
using TokenSink = std::function<void(const TokenEvent&)>;

struct Completion {
  std::string text;
  std::string finish_reason;
  std::optional<StreamError> error;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;

  /// Blocks until the terminal event has been delivered to `sink`.
  virtual void stream_chat(const ChatRequest& request, const TokenSink& sink) = 0;

  /// Non-streaming mode. The default collects stream_chat.
  virtual Completion complete(const ChatRequest& request);
};

/// Request body for the chat-completions endpoint, field order fixed:
/// model, messages, temperature, max_tokens, stream.
nlohmann::ordered_json request_payload(const ChatRequest& request);

/// Drains a stream into a Completion (text = concatenated tokens).
Completion collect(ChatBackend& backend, const ChatRequest& request);

}  // namespace werewolf::llm
