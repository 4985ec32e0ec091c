#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "werewolf/llm/chat.hpp"

namespace werewolf::llm {

// Some hosted providers answer from a similarity cache when two prompts look
// alike, which makes distinct players echo each other. Every request gets a
// per-session nonce and a per-request counter in its system message.

/// 16 lowercase hex digits from the OS entropy source.
std::string random_nonce();

/// "[[nonce <nonce> #<counter>]] (request bookkeeping; ignore)"
std::string nonce_tag(std::string_view nonce, std::uint64_t counter);

/// Writes req.session_nonce and req.request_counter into the system message
/// (a system message is inserted at the front if there is none).
ChatRequest cache_bust(ChatRequest request);

/// Removes every nonce tag; used on model output before reply parsing.
std::string strip_nonce_tags(std::string_view text);

/// Decorator that stamps each request with the session nonce and the next
/// counter value before forwarding.
class CacheBustingBackend final : public ChatBackend {
 public:
  CacheBustingBackend(std::shared_ptr<ChatBackend> inner, std::string nonce);

  void stream_chat(const ChatRequest& request, const TokenSink& sink) override;
  Completion complete(const ChatRequest& request) override;

  const std::string& nonce() const noexcept { return nonce_; }
  ChatRequest stamp(ChatRequest request);

 private:
  std::shared_ptr<ChatBackend> inner_;
  std::string nonce_;
  std::atomic<std::uint64_t> counter_{0};
};

}  // namespace werewolf::llm
