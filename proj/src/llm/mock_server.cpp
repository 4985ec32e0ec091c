#include "werewolf/llm/mock_server.hpp"

#include <atomic>
#include <stdexcept>

#include "httplib.h"

namespace werewolf::llm {
namespace {

using OJson = nlohmann::ordered_json;

ChatRequest request_from_body(const std::string& body) {
  const auto j = nlohmann::json::parse(body);
  ChatRequest r;
  for (const auto& m : j.at("messages")) {
    r.messages.push_back({m.at("role").get<std::string>(), m.at("content").get<std::string>()});
  }
  r.model = j.value("model", "");
  r.temperature = j.value("temperature", 0.7);
  r.max_tokens = j.value("max_tokens", 512);
  r.stream = j.value("stream", false);
  return r;
}

std::string sse(const OJson& j) { return "data: " + j.dump() + "\n\n"; }

OJson chunk(const std::string& id, const std::string& model, OJson delta, OJson finish_reason) {
  OJson choice;
  choice["index"] = 0;
  choice["delta"] = std::move(delta);
  choice["finish_reason"] = std::move(finish_reason);
  OJson j;
  j["id"] = id;
  j["object"] = "chat.completion.chunk";
  j["model"] = model;
  j["choices"] = OJson::array({std::move(choice)});
  return j;
}

}  // namespace

ChatServer::ChatServer(std::shared_ptr<ChatBackend> backend)
    : backend_(std::move(backend)), server_(std::make_unique<httplib::Server>()) {
  auto counter = std::make_shared<std::atomic<std::uint64_t>>(0);
  server_->Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });
  server_->Post("/v1/chat/completions", [this, counter](const httplib::Request& req, httplib::Response& res) {
    ChatRequest request;
    try {
      request = request_from_body(req.body);
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(OJson{{"error", {{"message", e.what()}}}}.dump(), "application/json");
      return;
    }
    const std::string id = "mock-" + std::to_string(counter->fetch_add(1));
    if (!request.stream) {
      const auto completion = backend_->complete(request);
      if (completion.error) {
        res.status = 503;
        res.set_content(OJson{{"error", {{"message", completion.error->message}}}}.dump(), "application/json");
        return;
      }
      OJson message;
      message["role"] = "assistant";
      message["content"] = completion.text;
      OJson choice;
      choice["index"] = 0;
      choice["message"] = std::move(message);
      choice["finish_reason"] = completion.finish_reason;
      OJson j;
      j["id"] = id;
      j["object"] = "chat.completion";
      j["model"] = request.model;
      j["choices"] = OJson::array({std::move(choice)});
      res.set_content(j.dump(), "application/json");
      return;
    }
    res.set_chunked_content_provider("text/event-stream", [this, request, id](std::size_t, httplib::DataSink& sink) {
      bool ok = true;
      auto send = [&sink](const std::string& text) { return sink.write(text.data(), text.size()); };
      backend_->stream_chat(request, [&](const TokenEvent& event) {
        if (!ok) return;
        if (const auto* token = std::get_if<Token>(&event)) {
          ok = send(sse(chunk(id, request.model, {{"content", token->text}}, nullptr)));
        } else if (const auto* done = std::get_if<Done>(&event)) {
          ok = send(sse(chunk(id, request.model, OJson::object(), done->finish_reason)));
          ok = ok && send("data: [DONE]\n\n");
        } else {
          ok = false;  // drop the connection; the client reports it
        }
      });
      if (ok) sink.done();
      return ok;
    });
  });
}

ChatServer::~ChatServer() { stop(); }

int ChatServer::start(const std::string& host, int port) {
  host_ = host;
  port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (port_ < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

bool ChatServer::listen(const std::string& host, int port) {
  host_ = host;
  port_ = port;
  return server_->listen(host, port);
}

void ChatServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string ChatServer::url() const {
  return "http://" + host_ + ":" + std::to_string(port_) + "/v1/chat/completions";
}

}  // namespace werewolf::llm
