#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "werewolf/agents/human.hpp"
#include "werewolf/session/event.hpp"
#include "werewolf/speech/audio.hpp"

namespace werewolf::session {

inline constexpr int kProtocolVersion = 1;

/// Transport end of one client. send() must not block on the network.
class Connection {
 public:
  virtual ~Connection() = default;
  virtual void send(const std::string& frame) = 0;
};

/// Error codes carried by {"type":"error"} frames.
namespace errors {
inline constexpr const char* kMalformed = "malformed-frame";
inline constexpr const char* kVersion = "unsupported-version";
inline constexpr const char* kUnauthorized = "unauthorized";
inline constexpr const char* kStaleAck = "stale-ack";
inline constexpr const char* kNotJoined = "not-joined";
inline constexpr const char* kAlreadyJoined = "already-joined";
inline constexpr const char* kNoRequest = "no-pending-request";
inline constexpr const char* kRejected = "rejected";
}  // namespace errors

std::string event_frame(const SessionEvent& event);
std::string audio_frame(const speech::AudioClip& clip, std::optional<PlayerId> speaker);
std::string error_frame(std::string_view code, std::string_view message);

std::string base64_encode(std::string_view bytes);

/// Fans session events out to connected clients. Clients join as a human
/// seat (optionally with a token) or as a spectator; a player receives public
/// events and events addressed to them, a spectator only public ones, and
/// both receive all audio. Late joiners get the backlog. Player submissions
/// are forwarded to the seat's mailbox. Protocol errors answer with an error
/// frame and keep the connection open.
class SessionHub {
 public:
  using ConnectionId = std::uint64_t;

  explicit SessionHub(std::map<PlayerId, std::shared_ptr<agents::HumanSeat>> seats = {},
                      std::map<PlayerId, std::string> tokens = {});
  ~SessionHub();
  SessionHub(const SessionHub&) = delete;
  SessionHub& operator=(const SessionHub&) = delete;

  ConnectionId connect(std::shared_ptr<Connection> connection);
  void disconnect(ConnectionId id);
  void handle_frame(ConnectionId id, std::string_view text);

  void publish(const SessionEvent& event);
  void publish_audio(const speech::AudioClip& clip);

  std::optional<PlayerId> player_of(ConnectionId id) const;
  std::size_t connected_players() const;

 private:
  enum class Kind { Unbound, Player, Spectator };
  struct Client {
    std::shared_ptr<Connection> connection;
    Kind kind = Kind::Unbound;
    std::optional<PlayerId> player;
    std::optional<std::uint64_t> last_sent;
    std::optional<std::uint64_t> last_ack;
  };

  void deliver(Client& client, const SessionEvent& event);
  void handle_join(Client& client, const Json& frame);
  void handle_submission(Client& client, const std::string& type, const Json& frame);
  void on_reject(PlayerId player, const std::string& hint);

  std::map<PlayerId, std::shared_ptr<agents::HumanSeat>> seats_;
  std::map<PlayerId, std::string> tokens_;
  mutable std::mutex mu_;
  ConnectionId next_id_ = 1;
  std::map<ConnectionId, Client> clients_;
  std::vector<SessionEvent> history_;
  std::map<std::uint64_t, PlayerId> speakers_;
};

}  // namespace werewolf::session
