#include "werewolf/llm/mock_backend.hpp"

#include <memory>
#include <thread>

namespace werewolf::llm {

MockChatBackend::MockChatBackend(Responder responder, Options options)
    : responder_(std::move(responder)), options_(options) {}

MockChatBackend::MockChatBackend(Responder responder, std::chrono::microseconds inter_token_delay)
    : MockChatBackend(std::move(responder), Options{inter_token_delay, std::nullopt, 0}) {}

MockChatBackend::Responder MockChatBackend::scripted(std::vector<std::string> replies) {
  auto next = std::make_shared<std::size_t>(0);
  auto shared = std::make_shared<std::vector<std::string>>(std::move(replies));
  return [next, shared](const ChatRequest&) -> std::string {
    if (shared->empty()) return "";
    return (*shared)[(*next)++ % shared->size()];
  };
}

std::vector<std::string> MockChatBackend::tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const bool word_start = text[i] == ' ' && i > 0 && text[i - 1] != ' ';
    if (word_start && !current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
    current += text[i];
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string MockChatBackend::reply_for(const ChatRequest& request) {
  // The responder may keep state; calls from concurrent night elicitations
  // are serialized here.
  std::lock_guard lock(mu_);
  requests_.push_back(request);
  return responder_(request);
}

void MockChatBackend::stream_chat(const ChatRequest& request, const TokenSink& sink) {
  const std::string reply = reply_for(request);
  const auto tokens = tokenize(reply);
  std::size_t sent = 0;
  for (const auto& text : tokens) {
    if (options_.fail && sent == options_.fail_after_tokens) break;
    if (options_.inter_token_delay.count() > 0) std::this_thread::sleep_for(options_.inter_token_delay);
    sink(Token{text, Clock::now()});
    ++sent;
  }
  if (options_.fail) {
    sink(StreamError{*options_.fail, "mock failure"});
  } else {
    sink(Done{"stop"});
  }
}

Completion MockChatBackend::complete(const ChatRequest& request) {
  if (options_.fail) {
    // Keep the failure semantics identical to streaming mode.
    return collect(*this, request);
  }
  return Completion{reply_for(request), "stop", std::nullopt};
}

std::size_t MockChatBackend::calls() const {
  std::lock_guard lock(mu_);
  return requests_.size();
}

std::vector<ChatRequest> MockChatBackend::requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

}  // namespace werewolf::llm
