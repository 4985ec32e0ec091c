#include "werewolf/session/event.hpp"

namespace werewolf::session {

void to_json(Json& j, const SessionEvent& e) {
  j = Json{{"seq", e.seq}, {"timestamp_ms", e.timestamp_ms}, {"visibility", e.visibility}, {"payload", e.payload}};
}

void from_json(const Json& j, SessionEvent& e) {
  e.seq = j.at("seq").get<std::uint64_t>();
  e.timestamp_ms = j.at("timestamp_ms").get<std::int64_t>();
  e.visibility = j.at("visibility").get<Visibility>();
  e.payload = j.at("payload").get<EventPayload>();
}

bool is_engine_event(const EventPayload& payload) noexcept {
  return std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        return !(std::is_same_v<T, NightActionSubmitted> || std::is_same_v<T, StatementChunk> ||
                 std::is_same_v<T, ActionRequest> || std::is_same_v<T, Fallback> || std::is_same_v<T, Degradation>);
      },
      payload);
}

}  // namespace werewolf::session
