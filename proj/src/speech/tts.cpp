#include "werewolf/speech/tts.hpp"

#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "werewolf/speech/audio.hpp"
#include "werewolf/speech/segmenter.hpp"

namespace werewolf::speech {

double estimated_duration(const std::string& text, double chars_per_second) {
  return static_cast<double>(count_code_points(text)) / chars_per_second;
}

std::string MockTtsBackend::speak(const std::string& text, const std::string&) {
  if (options_.synth_delay.count() > 0) std::this_thread::sleep_for(options_.synth_delay);
  if (options_.fail) throw TtsError(TtsError::Kind::Backend, "mock backend failure");
  return encode_wav(silence(estimated_duration(text, options_.chars_per_second), options_.sample_rate),
                    options_.sample_rate);
}

HttpTtsConfig HttpTtsConfig::with_env() const {
  HttpTtsConfig out = *this;
  if (const char* v = std::getenv("WEREWOLF_TTS_URL"); v && *v) out.url = v;
  if (const char* v = std::getenv("WEREWOLF_TTS_TIMEOUT_MS"); v && *v) out.timeout = std::chrono::milliseconds(std::atoll(v));
  return out;
}

std::string tts_request_body(const std::string& text, const std::string& reference_id) {
  nlohmann::ordered_json j;
  j["text"] = text;
  j["reference_id"] = reference_id;
  return j.dump();
}

HttpTtsBackend::HttpTtsBackend(HttpTtsConfig config) : config_(std::move(config)) {
  while (!config_.url.empty() && config_.url.back() == '/') config_.url.pop_back();
}

std::string HttpTtsBackend::speak(const std::string& text, const std::string& reference_id) {
  httplib::Client client(config_.url);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  auto res = client.Post("/tts", tts_request_body(text, reference_id), "application/json");
  if (!res) {
    const auto err = res.error();
    const auto kind = (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read)
                          ? TtsError::Kind::Timeout
                          : TtsError::Kind::Backend;
    throw TtsError(kind, "tts request failed: " + httplib::to_string(err));
  }
  if (res->status != 200) {
    throw TtsError(res->status == 504 ? TtsError::Kind::Timeout : TtsError::Kind::Backend,
                   "tts status " + std::to_string(res->status));
  }
  return res->body;
}

bool HttpTtsBackend::health() {
  httplib::Client client(config_.url);
  client.set_connection_timeout(std::chrono::seconds(2));
  client.set_read_timeout(std::chrono::seconds(2));
  auto res = client.Get("/health");
  return res && res->status >= 200 && res->status < 300;
}

TtsServer::TtsServer(std::shared_ptr<TtsBackend> backend)
    : backend_(std::move(backend)), server_(std::make_unique<httplib::Server>()) {
  server_->Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    const bool ok = backend_->health();
    res.status = ok ? 200 : 503;
    res.set_content(ok ? "ok" : "unhealthy", "text/plain");
  });
  server_->Post("/tts", [this](const httplib::Request& req, httplib::Response& res) {
    std::string text, reference_id;
    try {
      const auto j = nlohmann::json::parse(req.body);
      text = j.at("text").get<std::string>();
      reference_id = j.at("reference_id").get<std::string>();
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(e.what(), "text/plain");
      return;
    }
    try {
      res.set_content(backend_->speak(text, reference_id), "audio/wav");
    } catch (const TtsError& e) {
      res.status = e.kind() == TtsError::Kind::Timeout ? 504 : 500;
      res.set_content(e.what(), "text/plain");
    }
  });
}

TtsServer::~TtsServer() { stop(); }

int TtsServer::start(const std::string& host, int port) {
  host_ = host;
  port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (port_ < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

bool TtsServer::listen(const std::string& host, int port) {
  host_ = host;
  port_ = port;
  return server_->listen(host, port);
}

void TtsServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string TtsServer::url() const { return "http://" + host_ + ":" + std::to_string(port_); }

}  // namespace werewolf::speech
