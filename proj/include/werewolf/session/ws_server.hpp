#pragma once

#include <memory>
#include <string>

#include "werewolf/session/hub.hpp"

namespace werewolf::session {

/// WebSocket front end for a SessionHub: one text frame per protocol frame.
/// Runs its own I/O thread.
class WsServer {
 public:
  explicit WsServer(SessionHub& hub);
  ~WsServer();
  WsServer(const WsServer&) = delete;
  WsServer& operator=(const WsServer&) = delete;

  /// Binds (port 0 picks a free port) and starts accepting. Returns the port.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace werewolf::session
