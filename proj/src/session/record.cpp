#include "werewolf/session/record.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "werewolf/core/error.hpp"
#include "werewolf/core/game.hpp"

namespace werewolf::session {

void write_jsonl(std::ostream& out, const SessionRecord& record) {
  Json header{{"kind", "header"}, {"version", kRecordVersion}, {"config", record.config}};
  Json bindings = Json::array();
  for (const auto& b : record.bindings) bindings.push_back(b);
  header["bindings"] = bindings;
  out << header.dump() << '\n';
  for (const auto& e : record.events) {
    Json line = e;
    line["kind"] = "event";
    out << line.dump() << '\n';
  }
  Json footer{{"kind", "footer"}, {"final_digest", record.final_digest}, {"events", record.events.size()}};
  footer["outcome"] = record.outcome ? Json(*record.outcome) : Json(nullptr);
  out << footer.dump() << '\n';
}

std::string to_jsonl(const SessionRecord& record) {
  std::ostringstream out;
  write_jsonl(out, record);
  return out.str();
}

void save(const std::filesystem::path& path, const SessionRecord& record) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_jsonl(out, record);
}

SessionRecord read_jsonl(std::istream& in) {
  SessionRecord record;
  bool header = false, footer = false;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    try {
      if (footer) throw std::runtime_error("content after footer");
      const Json j = Json::parse(line);
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "header") {
        if (header) throw std::runtime_error("second header");
        if (j.at("version").get<int>() != kRecordVersion) throw std::runtime_error("unsupported record version");
        record.config = j.at("config").get<GameConfig>();
        for (const auto& b : j.at("bindings")) record.bindings.push_back(b.get<agents::AgentBinding>());
        header = true;
      } else if (!header) {
        throw std::runtime_error("missing header");
      } else if (kind == "event") {
        auto e = j.get<SessionEvent>();
        if (e.seq != record.events.size()) throw std::runtime_error("sequence gap");
        record.events.push_back(std::move(e));
      } else if (kind == "footer") {
        record.final_digest = j.at("final_digest").get<std::string>();
        if (!j.at("outcome").is_null()) record.outcome = j.at("outcome").get<GameOutcome>();
        footer = true;
      } else {
        throw std::runtime_error("unknown line kind " + kind);
      }
    } catch (const std::exception& ex) {
      throw std::runtime_error("record line " + std::to_string(n) + ": " + ex.what());
    }
  }
  if (!footer) throw std::runtime_error("record has no footer (truncated?)");
  return record;
}

SessionRecord load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_jsonl(in);
}

ReplayResult replay(const SessionRecord& record) {
  ReplayResult r;
  try {
    GameState s = new_game(record.config);
    std::vector<GameEvent> produced = opening_events(s);
    std::size_t cursor = 0;

    for (const auto& ev : record.events) {
      if (const auto* sub = std::get_if<NightActionSubmitted>(&ev.payload)) {
        s = submit_night_action(s, sub->player, sub->action);
        continue;
      }
      if (!is_engine_event(ev.payload)) continue;
      if (cursor == produced.size()) {
        if (const auto* st = std::get_if<StatementDone>(&ev.payload)) {
          auto t = record_statement(s, st->speaker, st->text);
          s = std::move(t.state);
          produced.insert(produced.end(), t.events.begin(), t.events.end());
        } else if (const auto* vr = std::get_if<VoteResult>(&ev.payload)) {
          auto t = process_voting(s, vr->votes);
          s = std::move(t.state);
          produced.insert(produced.end(), t.events.begin(), t.events.end());
        } else if (std::holds_alternative<NightPhase>(s.phase)) {
          auto t = resolve_night(s);
          s = std::move(t.state);
          produced.insert(produced.end(), t.events.begin(), t.events.end());
        }
      }
      const GameEvent recorded{ev.visibility, ev.payload};
      if (cursor == produced.size() || !(produced[cursor] == recorded)) {
        r.error = "event seq " + std::to_string(ev.seq) + " (" + std::string(payload_type(ev.payload)) +
                  ") does not match the replayed game";
        r.state = s;
        return r;
      }
      ++cursor;
      ++r.engine_events_checked;
    }
    if (cursor != produced.size()) {
      r.error = "record ends before the replayed game's events (" + std::string(payload_type(produced[cursor].payload)) + ")";
    }
    r.final_digest = state_digest(s);
    r.state = std::move(s);
    if (r.error.empty() && r.final_digest != record.final_digest) r.error = "final digest differs";
    r.ok = r.error.empty();
  } catch (const std::exception& ex) {
    r.error = std::string("replay rejected an input: ") + ex.what();
  }
  return r;
}

}  // namespace werewolf::session
