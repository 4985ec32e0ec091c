#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "werewolf/agents/binding.hpp"
#include "werewolf/core/config.hpp"
#include "werewolf/core/state.hpp"
#include "werewolf/session/event.hpp"

namespace werewolf::session {

inline constexpr int kRecordVersion = 1;

struct SessionRecord {
  GameConfig config;
  std::vector<agents::AgentBinding> bindings;
  std::vector<SessionEvent> events;
  std::string final_digest;
  std::optional<GameOutcome> outcome;
  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

// JSONL layout: a header line {"kind":"header",...}, one {"kind":"event",...}
// line per event, and a footer line {"kind":"footer",...}.
void write_jsonl(std::ostream& out, const SessionRecord& record);
std::string to_jsonl(const SessionRecord& record);
void save(const std::filesystem::path& path, const SessionRecord& record);
/// Throws std::runtime_error naming the offending line.
SessionRecord read_jsonl(std::istream& in);
SessionRecord load(const std::filesystem::path& path);

struct ReplayResult {
  bool ok = false;
  std::string error;  // first mismatch
  GameState state;
  std::string final_digest;
  std::size_t engine_events_checked = 0;
};

/// Re-runs the game from the record's inputs (night submissions, statements
/// and votes) through the rules engine. Every engine event it produces must
/// equal the recorded one, and the final digest must match the footer.
ReplayResult replay(const SessionRecord& record);

}  // namespace werewolf::session
