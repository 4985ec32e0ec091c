#pragma once

#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "werewolf/llm/chat.hpp"

namespace werewolf::llm {

struct MockOptions {
  std::chrono::microseconds inter_token_delay{0};  // slept before every token
  std::optional<StreamErrorCause> fail;             // every call fails with this
  std::size_t fail_after_tokens = 0;                // tokens delivered before the failure
};

/// Deterministic in-process backend. The responder decides the reply text;
/// the text is split into tokens at word starts ("Hello. World." streams as
/// "Hello." then " World.").
class MockChatBackend final : public ChatBackend {
 public:
  using Responder = std::function<std::string(const ChatRequest&)>;

  using Options = MockOptions;

  explicit MockChatBackend(Responder responder, Options options = {});
  MockChatBackend(Responder responder, std::chrono::microseconds inter_token_delay);

  /// Replies in order, cycling when exhausted.
  static Responder scripted(std::vector<std::string> replies);

  static std::vector<std::string> tokenize(std::string_view text);

  void stream_chat(const ChatRequest& request, const TokenSink& sink) override;
  Completion complete(const ChatRequest& request) override;

  std::size_t calls() const;
  std::vector<ChatRequest> requests() const;

 private:
  std::string reply_for(const ChatRequest& request);

  Responder responder_;
  Options options_;
  mutable std::mutex mu_;
  std::vector<ChatRequest> requests_;
};

}  // namespace werewolf::llm
