#pragma once

#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>

namespace httplib {
class Server;
}

namespace werewolf::speech {

class TtsError : public std::runtime_error {
 public:
  enum class Kind { Timeout, Backend };
  TtsError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Text in, RIFF/WAV bytes out. Implementations must be callable from
/// several synthesis workers at once.
class TtsBackend {
 public:
  virtual ~TtsBackend() = default;
  virtual std::string speak(const std::string& text, const std::string& reference_id) = 0;
  virtual bool health() = 0;
};

/// Seconds of speech the mock produces for `text`: code points / rate.
double estimated_duration(const std::string& text, double chars_per_second = 12.0);

struct MockTtsOptions {
  double chars_per_second = 12.0;
  int sample_rate = 32000;
  std::chrono::microseconds synth_delay{0};
  bool fail = false;  // every call throws TtsError{Backend}
};

/// Deterministic silence whose length is proportional to the text.
class MockTtsBackend final : public TtsBackend {
 public:
  explicit MockTtsBackend(MockTtsOptions options = {}) : options_(options) {}

  std::string speak(const std::string& text, const std::string& reference_id) override;
  bool health() override { return !options_.fail; }

  const MockTtsOptions& options() const noexcept { return options_; }

 private:
  MockTtsOptions options_;
};

struct HttpTtsConfig {
  std::string url = "http://127.0.0.1:9880";  // scheme://host:port
  std::chrono::milliseconds timeout{30'000};

  /// WEREWOLF_TTS_URL and WEREWOLF_TTS_TIMEOUT_MS override when set.
  HttpTtsConfig with_env() const;
};

/// POST {url}/tts with {"text": ..., "reference_id": ...} answered by
/// audio/wav; GET {url}/health answered by any 2xx.
class HttpTtsBackend final : public TtsBackend {
 public:
  explicit HttpTtsBackend(HttpTtsConfig config);

  std::string speak(const std::string& text, const std::string& reference_id) override;
  bool health() override;

 private:
  HttpTtsConfig config_;
};

/// Request body sent by HttpTtsBackend (keys in this order).
std::string tts_request_body(const std::string& text, const std::string& reference_id);

/// Serves any TtsBackend over the same wire contract. Backend failures map
/// to 500 (504 for timeouts).
class TtsServer {
 public:
  explicit TtsServer(std::shared_ptr<TtsBackend> backend);
  ~TtsServer();
  TtsServer(const TtsServer&) = delete;
  TtsServer& operator=(const TtsServer&) = delete;

  int start(const std::string& host = "127.0.0.1", int port = 0);
  bool listen(const std::string& host, int port);
  void stop();
  std::string url() const;

 private:
  std::shared_ptr<TtsBackend> backend_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::string host_;
  int port_ = 0;
};

}  // namespace werewolf::speech
