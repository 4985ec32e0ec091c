#pragma once

#include <cstdint>
#include <optional>

#include "werewolf/core/events.hpp"
#include "werewolf/core/serialize.hpp"

namespace werewolf::session {

/// One entry of the append-only session log. The same shape is persisted to
/// JSONL and pushed to clients.
struct SessionEvent {
  std::uint64_t seq = 0;  // dense from 0
  std::int64_t timestamp_ms = 0;
  Visibility visibility;
  EventPayload payload;
  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

void to_json(Json& j, const SessionEvent& e);
void from_json(const Json& j, SessionEvent& e);

/// True for the payload kinds produced by the rules engine (as opposed to
/// the orchestrator's request, streaming and diagnostic kinds).
bool is_engine_event(const EventPayload& payload) noexcept;

}  // namespace werewolf::session
