#include "werewolf/llm/openai_client.hpp"

#include <cstdlib>
#include <regex>
#include <stdexcept>
#include <thread>

#include "httplib.h"

namespace werewolf::llm {
namespace {

std::optional<std::string> env(const char* name) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

bool retryable(const StreamError& error) {
  if (error.cause == StreamErrorCause::MalformedChunk) return false;
  if (error.cause == StreamErrorCause::HttpStatus) {
    // message starts with the status code
    const int status = std::atoi(error.message.c_str());
    return status == 408 || status == 429 || status >= 500;
  }
  return true;
}

// Incremental SSE reader. Lines may arrive split across network reads.
class SseReader {
 public:
  explicit SseReader(const TokenSink& sink) : sink_(sink) {}

  void feed(const char* data, std::size_t len) {
    buffer_.append(data, len);
    std::size_t start = 0;
    for (std::size_t nl; !failed() && !done_ && (nl = buffer_.find('\n', start)) != std::string::npos;
         start = nl + 1) {
      std::string line = buffer_.substr(start, nl - start);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      on_line(line);
    }
    buffer_.erase(0, start);
  }

  void finish() {
    if (!failed() && !done_ && !event_data_.empty()) dispatch();
  }

  bool failed() const { return error_.has_value(); }
  bool done() const { return done_; }
  bool delivered() const { return delivered_; }
  const std::optional<std::string>& finish_reason() const { return finish_reason_; }
  const std::optional<StreamError>& error() const { return error_; }

 private:
  void on_line(const std::string& line) {
    if (line.empty()) {
      if (!event_data_.empty()) dispatch();
      return;
    }
    if (line.front() == ':') return;  // comment / keep-alive
    if (line.rfind("data:", 0) != 0) return;  // event:, id:, retry: are ignored
    std::string value = line.substr(5);
    if (!value.empty() && value.front() == ' ') value.erase(0, 1);
    if (!event_data_.empty()) event_data_ += '\n';
    event_data_ += value;
  }

  void dispatch() {
    const std::string data = std::move(event_data_);
    event_data_.clear();
    if (data == "[DONE]") {
      done_ = true;
      return;
    }
    try {
      auto delta = parse_sse_data(data);
      if (!delta.content.empty()) {
        delivered_ = true;
        sink_(Token{std::move(delta.content), Clock::now()});
      }
      if (delta.finish_reason) finish_reason_ = delta.finish_reason;
    } catch (const std::exception& e) {
      error_ = StreamError{StreamErrorCause::MalformedChunk, e.what()};
    }
  }

  const TokenSink& sink_;
  std::string buffer_;
  std::string event_data_;
  bool done_ = false;
  bool delivered_ = false;
  std::optional<std::string> finish_reason_;
  std::optional<StreamError> error_;
};

struct AttemptResult {
  bool delivered = false;
  std::optional<std::string> finish_reason;  // set on success
  std::optional<StreamError> error;
  std::string body;  // non-streaming mode
};

}  // namespace

EndpointConfig EndpointConfig::with_env() const {
  EndpointConfig out = *this;
  if (auto v = env("WEREWOLF_LLM_URL")) out.url = *v;
  if (auto v = env("WEREWOLF_LLM_API_KEY")) out.api_key = *v;
  if (auto v = env("WEREWOLF_LLM_MODEL")) out.model = *v;
  if (auto v = env("WEREWOLF_LLM_TIMEOUT_MS")) out.timeout = std::chrono::milliseconds(std::stoll(*v));
  return out;
}

SseDelta parse_sse_data(const std::string& data) {
  const auto j = nlohmann::json::parse(data);  // throws parse_error
  if (!j.is_object()) throw std::runtime_error("chunk is not an object");
  if (j.contains("error")) throw std::runtime_error("provider error: " + j.at("error").dump());
  const auto& choices = j.at("choices");
  if (!choices.is_array()) throw std::runtime_error("choices is not an array");
  SseDelta out;
  if (choices.empty()) return out;  // usage-only chunk
  const auto& choice = choices.at(0);
  if (choice.contains("delta")) {
    const auto& delta = choice.at("delta");
    if (delta.contains("content") && !delta.at("content").is_null()) out.content = delta.at("content").get<std::string>();
  }
  if (choice.contains("finish_reason") && !choice.at("finish_reason").is_null()) {
    out.finish_reason = choice.at("finish_reason").get<std::string>();
  }
  return out;
}

OpenAiChatClient::OpenAiChatClient(EndpointConfig config) : config_(std::move(config)) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.url, m, kUrl)) throw std::invalid_argument("bad LLM endpoint url: " + config_.url);
  origin_ = m[1];
  path_ = m[2].matched ? std::string(m[2]) : "/v1/chat/completions";
  sleeper = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

namespace {

AttemptResult attempt(const EndpointConfig& config, const std::string& origin, const std::string& path,
                      const ChatRequest& request, const TokenSink& sink) {
  httplib::Client client(origin);
  client.set_connection_timeout(config.connect_timeout);
  client.set_read_timeout(config.timeout);
  client.set_write_timeout(config.timeout);

  ChatRequest wire = request;
  if (wire.model.empty()) wire.model = config.model;

  httplib::Request req;
  req.method = "POST";
  req.path = path;
  req.body = request_payload(wire).dump();
  req.set_header("Content-Type", "application/json");
  req.set_header("Accept", wire.stream ? "text/event-stream" : "application/json");
  if (!config.api_key.empty()) req.set_header("Authorization", "Bearer " + config.api_key);

  AttemptResult out;
  SseReader reader(sink);
  int status = 0;
  auto last_activity = Clock::now();
  req.response_handler = [&](const httplib::Response& res) {
    status = res.status;
    last_activity = Clock::now();
    return true;
  };
  req.content_receiver = [&](const char* data, std::size_t len, std::uint64_t, std::uint64_t) {
    last_activity = Clock::now();
    if (status != 200 || !wire.stream) {
      out.body.append(data, len);
      return out.body.size() < (1u << 20);
    }
    reader.feed(data, len);
    return !reader.failed();
  };

  const auto result = client.send(req);
  out.delivered = reader.delivered();
  if (reader.failed()) {
    out.error = reader.error();
    return out;
  }
  if (status != 0 && status != 200) {
    out.error = StreamError{StreamErrorCause::HttpStatus, std::to_string(status) + " " + out.body.substr(0, 200)};
    return out;
  }
  if (!result && !reader.done()) {
    const auto err = result.error();
    const bool idle = Clock::now() - last_activity >= config.timeout * 9 / 10;
    if (err == httplib::Error::ConnectionTimeout || (err == httplib::Error::Read && idle)) {
      out.error = StreamError{StreamErrorCause::Timeout, httplib::to_string(err)};
    } else {
      out.error = StreamError{StreamErrorCause::ConnectionFailure, httplib::to_string(err)};
    }
    return out;
  }
  if (!wire.stream) {
    out.finish_reason = "";
    return out;
  }
  reader.finish();
  if (reader.failed()) {
    out.error = reader.error();
  } else if (reader.done() || reader.finish_reason()) {
    out.finish_reason = reader.finish_reason().value_or("stop");
  } else {
    out.error = StreamError{StreamErrorCause::ConnectionFailure, "stream closed before [DONE]"};
  }
  return out;
}

}  // namespace

void OpenAiChatClient::stream_chat(const ChatRequest& request, const TokenSink& sink) {
  ChatRequest streaming = request;
  streaming.stream = true;
  for (int n = 0;; ++n) {
    auto result = attempt(config_, origin_, path_, streaming, sink);
    if (result.finish_reason) {
      sink(Done{*result.finish_reason});
      return;
    }
    // Once speech has started, a retry would duplicate it.
    if (result.delivered || !retryable(*result.error) || n >= config_.max_retries) {
      sink(*result.error);
      return;
    }
    sleeper(config_.backoff * (1 << n));
  }
}

Completion OpenAiChatClient::complete(const ChatRequest& request) {
  ChatRequest plain = request;
  plain.stream = false;
  const TokenSink ignore = [](const TokenEvent&) {};
  for (int n = 0;; ++n) {
    auto result = attempt(config_, origin_, path_, plain, ignore);
    if (!result.error) {
      try {
        const auto j = nlohmann::json::parse(result.body);
        const auto& choice = j.at("choices").at(0);
        Completion out;
        out.text = choice.at("message").at("content").get<std::string>();
        if (choice.contains("finish_reason") && !choice.at("finish_reason").is_null()) {
          out.finish_reason = choice.at("finish_reason").get<std::string>();
        }
        return out;
      } catch (const std::exception& e) {
        return Completion{"", "", StreamError{StreamErrorCause::MalformedChunk, e.what()}};
      }
    }
    if (!retryable(*result.error) || n >= config_.max_retries) return Completion{"", "", result.error};
    sleeper(config_.backoff * (1 << n));
  }
}

}  // namespace werewolf::llm
