#include "werewolf/session/hub.hpp"

#include <openssl/evp.h>

namespace werewolf::session {
namespace {

Json frame(std::string_view type) { return Json{{"v", kProtocolVersion}, {"type", type}}; }

const std::map<std::string, std::string>& submission_tasks() {
  static const std::map<std::string, std::string> kTasks = {
      {"statement", "discuss"}, {"vote", "vote"}, {"night_action", "night_action"}};
  return kTasks;
}

}  // namespace

std::string base64_encode(std::string_view bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(bytes.data()), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string event_frame(const SessionEvent& event) {
  Json j = frame("event");
  j["event"] = event;
  return j.dump();
}

std::string audio_frame(const speech::AudioClip& clip, std::optional<PlayerId> speaker) {
  Json j = frame("audio");
  j["utterance"] = clip.utterance;
  j["index"] = clip.index;
  j["speaker"] = speaker ? Json(*speaker) : Json(nullptr);
  j["sample_rate"] = clip.sample_rate;
  j["duration_ms"] = static_cast<std::int64_t>(clip.duration() * 1000.0);
  j["format"] = "wav";
  j["data"] = base64_encode(speech::encode_wav(clip.samples, clip.sample_rate));
  return j.dump();
}

std::string error_frame(std::string_view code, std::string_view message) {
  Json j = frame("error");
  j["code"] = code;
  j["message"] = message;
  return j.dump();
}

SessionHub::SessionHub(std::map<PlayerId, std::shared_ptr<agents::HumanSeat>> seats,
                       std::map<PlayerId, std::string> tokens)
    : seats_(std::move(seats)), tokens_(std::move(tokens)) {
  for (auto& [player, seat] : seats_) {
    seat->set_reject_handler([this, p = player](const std::string& hint) { on_reject(p, hint); });
  }
}

SessionHub::~SessionHub() {
  for (auto& [player, seat] : seats_) seat->set_reject_handler({});
}

SessionHub::ConnectionId SessionHub::connect(std::shared_ptr<Connection> connection) {
  std::lock_guard lock(mu_);
  const ConnectionId id = next_id_++;
  Json hello = frame("hello");
  Json seats = Json::array();
  for (const auto& [player, seat] : seats_) seats.push_back(player);
  hello["seats"] = seats;
  connection->send(hello.dump());
  Client client;
  client.connection = std::move(connection);
  clients_[id] = std::move(client);
  return id;
}

void SessionHub::disconnect(ConnectionId id) {
  std::lock_guard lock(mu_);
  clients_.erase(id);
}

std::optional<PlayerId> SessionHub::player_of(ConnectionId id) const {
  std::lock_guard lock(mu_);
  auto it = clients_.find(id);
  return it == clients_.end() ? std::nullopt : it->second.player;
}

std::size_t SessionHub::connected_players() const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& [id, c] : clients_) n += c.kind == Kind::Player;
  return n;
}

void SessionHub::deliver(Client& client, const SessionEvent& event) {
  if (client.kind == Kind::Unbound) return;
  if (!event.visibility.admits(client.kind == Kind::Player ? client.player : std::nullopt)) return;
  client.connection->send(event_frame(event));
  client.last_sent = event.seq;
}

void SessionHub::publish(const SessionEvent& event) {
  std::lock_guard lock(mu_);
  if (const auto* chunk = std::get_if<StatementChunk>(&event.payload)) speakers_[chunk->utterance] = chunk->speaker;
  history_.push_back(event);
  for (auto& [id, client] : clients_) deliver(client, event);
}

void SessionHub::publish_audio(const speech::AudioClip& clip) {
  std::lock_guard lock(mu_);
  std::optional<PlayerId> speaker;
  if (auto it = speakers_.find(clip.utterance); it != speakers_.end()) speaker = it->second;
  const std::string text = audio_frame(clip, speaker);
  for (auto& [id, client] : clients_) {
    if (client.kind != Kind::Unbound) client.connection->send(text);
  }
}

void SessionHub::on_reject(PlayerId player, const std::string& hint) {
  std::lock_guard lock(mu_);
  for (auto& [id, client] : clients_) {
    if (client.kind == Kind::Player && client.player == player) client.connection->send(error_frame(errors::kRejected, hint));
  }
}

void SessionHub::handle_frame(ConnectionId id, std::string_view text) {
  std::lock_guard lock(mu_);
  auto it = clients_.find(id);
  if (it == clients_.end()) return;
  Client& client = it->second;

  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    client.connection->send(error_frame(errors::kMalformed, "expected a JSON object with a string \"type\""));
    return;
  }
  if (j.contains("v") && j["v"] != kProtocolVersion) {
    client.connection->send(error_frame(errors::kVersion, "this server speaks protocol version 1"));
    return;
  }
  const auto type = j["type"].get<std::string>();
  try {
    if (type == "join") {
      handle_join(client, j);
    } else if (type == "ack") {
      if (client.kind == Kind::Unbound) {
        client.connection->send(error_frame(errors::kNotJoined, "join first"));
        return;
      }
      const auto seq = j.at("seq").get<std::uint64_t>();
      if ((client.last_ack && seq <= *client.last_ack) || !client.last_sent || seq > *client.last_sent) {
        client.connection->send(error_frame(errors::kStaleAck, "ack " + std::to_string(seq) + " is out of order"));
        return;
      }
      client.last_ack = seq;
    } else if (submission_tasks().contains(type)) {
      handle_submission(client, type, j);
    } else if (type == "ping") {
      client.connection->send(frame("pong").dump());
    } else {
      client.connection->send(error_frame(errors::kMalformed, "unknown frame type " + type));
    }
  } catch (const Json::exception& ex) {
    client.connection->send(error_frame(errors::kMalformed, ex.what()));
  }
}

void SessionHub::handle_join(Client& client, const Json& j) {
  if (client.kind != Kind::Unbound) {
    client.connection->send(error_frame(errors::kAlreadyJoined, "this connection has already joined"));
    return;
  }
  const auto as = j.value("as", std::string("spectator"));
  if (as == "player") {
    const auto player = j.at("player").get<PlayerId>();
    if (!seats_.contains(player)) {
      client.connection->send(error_frame(errors::kUnauthorized, alias_of(player) + " is not an open human seat"));
      return;
    }
    if (auto tok = tokens_.find(player); tok != tokens_.end() && !tok->second.empty() &&
                                         j.value("token", std::string()) != tok->second) {
      client.connection->send(error_frame(errors::kUnauthorized, "wrong token for " + alias_of(player)));
      return;
    }
    for (const auto& [id, other] : clients_) {
      if (other.kind == Kind::Player && other.player == player) {
        client.connection->send(error_frame(errors::kUnauthorized, alias_of(player) + " is already connected"));
        return;
      }
    }
    client.kind = Kind::Player;
    client.player = player;
  } else if (as == "spectator") {
    client.kind = Kind::Spectator;
  } else {
    client.connection->send(error_frame(errors::kMalformed, "join \"as\" must be player or spectator"));
    return;
  }
  Json joined = frame("joined");
  joined["as"] = as;
  joined["player"] = client.player ? Json(*client.player) : Json(nullptr);
  client.connection->send(joined.dump());
  for (const auto& e : history_) deliver(client, e);
}

void SessionHub::handle_submission(Client& client, const std::string& type, const Json& j) {
  if (client.kind != Kind::Player) {
    client.connection->send(error_frame(errors::kUnauthorized, "only seated players can submit"));
    return;
  }
  auto& seat = seats_.at(*client.player);
  const std::string& task = submission_tasks().at(type);
  if (seat->open_task() != task) {
    client.connection->send(error_frame(errors::kNoRequest, "no " + task + " request is open for you"));
    return;
  }
  std::string text;
  if (type == "statement") {
    text = j.at("text").get<std::string>();
  } else if (type == "vote") {
    text = "VOTE " + j.at("target").get<std::string>();
  } else {
    text = j.at("action").get<std::string>();
  }
  seat->post(std::move(text));
  Json ok = frame("received");
  ok["task"] = task;
  client.connection->send(ok.dump());
}

}  // namespace werewolf::session
