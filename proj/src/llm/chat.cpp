#include "werewolf/llm/chat.hpp"

namespace werewolf::llm {

std::string_view to_string(StreamErrorCause cause) noexcept {
  switch (cause) {
    case StreamErrorCause::Timeout: return "timeout";
    case StreamErrorCause::ConnectionFailure: return "connection-failure";
    case StreamErrorCause::MalformedChunk: return "malformed-chunk";
    case StreamErrorCause::HttpStatus: return "http-status";
  }
  return "unknown";
}

Completion ChatBackend::complete(const ChatRequest& request) {
  return collect(*this, request);
}

Completion collect(ChatBackend& backend, const ChatRequest& request) {
  Completion out;
  backend.stream_chat(request, [&](const TokenEvent& event) {
    if (const auto* token = std::get_if<Token>(&event)) {
      out.text += token->text;
    } else if (const auto* done = std::get_if<Done>(&event)) {
      out.finish_reason = done->finish_reason;
    } else {
      out.error = std::get<StreamError>(event);
    }
  });
  return out;
}

nlohmann::ordered_json request_payload(const ChatRequest& request) {
  nlohmann::ordered_json messages = nlohmann::ordered_json::array();
  for (const auto& m : request.messages) {
    messages.push_back({{"role", m.role}, {"content", m.content}});
  }
  nlohmann::ordered_json j;
  j["model"] = request.model;
  j["messages"] = std::move(messages);
  j["temperature"] = request.temperature;
  j["max_tokens"] = request.max_tokens;
  j["stream"] = request.stream;
  return j;
}

}  // namespace werewolf::llm
