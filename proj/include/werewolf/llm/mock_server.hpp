#pragma once

#include <memory>
#include <string>
#include <thread>

#include "werewolf/llm/chat.hpp"

namespace httplib {
class Server;
}

namespace werewolf::llm {

/// Serves any ChatBackend over the chat-completions wire format on
/// 127.0.0.1. Used for conformance tests of the HTTP client and by the
/// `mock-llm` CLI subcommand.
class ChatServer {
 public:
  explicit ChatServer(std::shared_ptr<ChatBackend> backend);
  ~ChatServer();
  ChatServer(const ChatServer&) = delete;
  ChatServer& operator=(const ChatServer&) = delete;

  /// Binds (port 0 picks a free port) and starts serving on a thread.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  /// Blocks serving on the calling thread.
  bool listen(const std::string& host, int port);
  void stop();

  std::string url() const;

 private:
  std::shared_ptr<ChatBackend> backend_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::string host_;
  int port_ = 0;
};

}  // namespace werewolf::llm
