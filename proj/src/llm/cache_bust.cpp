#include "werewolf/llm/cache_bust.hpp"

#include <random>
#include <regex>

namespace werewolf::llm {

std::string random_nonce() {
  std::random_device rd;
  const std::uint64_t bits = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 0; i < 16; ++i) out[i] = kHex[(bits >> (60 - 4 * i)) & 0xF];
  return out;
}

std::string nonce_tag(std::string_view nonce, std::uint64_t counter) {
  return "[[nonce " + std::string(nonce) + " #" + std::to_string(counter) + "]] (request bookkeeping; ignore)";
}

ChatRequest cache_bust(ChatRequest request) {
  const std::string tag = nonce_tag(request.session_nonce, request.request_counter);
  if (request.messages.empty() || request.messages.front().role != "system") {
    request.messages.insert(request.messages.begin(), ChatMessage{"system", tag});
  } else {
    request.messages.front().content += "\n\n" + tag;
  }
  return request;
}

std::string strip_nonce_tags(std::string_view text) {
  static const std::regex kTag(R"(\[\[nonce [^\]\s]* #[0-9]+\]\]( \(request bookkeeping; ignore\))?)");
  return std::regex_replace(std::string(text), kTag, "");
}

CacheBustingBackend::CacheBustingBackend(std::shared_ptr<ChatBackend> inner, std::string nonce)
    : inner_(std::move(inner)), nonce_(std::move(nonce)) {}

ChatRequest CacheBustingBackend::stamp(ChatRequest request) {
  request.session_nonce = nonce_;
  request.request_counter = counter_.fetch_add(1);
  return cache_bust(std::move(request));
}

void CacheBustingBackend::stream_chat(const ChatRequest& request, const TokenSink& sink) {
  inner_->stream_chat(stamp(request), sink);
}

Completion CacheBustingBackend::complete(const ChatRequest& request) {
  return inner_->complete(stamp(request));
}

}  // namespace werewolf::llm
