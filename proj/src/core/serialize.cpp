#include "werewolf/core/serialize.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "werewolf/core/error.hpp"

namespace werewolf {

namespace {

template <typename T>
Json opt(const std::optional<T>& value) {
  return value ? Json(*value) : Json(nullptr);
}

template <typename T>
std::optional<T> opt_from(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

Json id_map(const std::map<PlayerId, PlayerId>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[std::to_string(k.value)] = v.value;
  return out;
}

std::map<PlayerId, PlayerId> id_map_from(const Json& j) {
  std::map<PlayerId, PlayerId> out;
  for (const auto& [k, v] : j.items()) out[PlayerId(std::stoi(k))] = v.get<PlayerId>();
  return out;
}

const char* scope_name(Visibility::Scope s) {
  switch (s) {
    case Visibility::Scope::Public: return "public";
    case Visibility::Scope::Private: return "private";
    case Visibility::Scope::System: return "system";
  }
  return "?";
}

template <typename E>
E enum_from(const Json& j, std::initializer_list<E> values) {
  const auto name = j.get<std::string>();
  for (E v : values) {
    if (to_string(v) == name) return v;
  }
  throw std::invalid_argument("unknown enumerator '" + name + "'");
}

}  // namespace

void to_json(Json& j, const PlayerId& id) { j = id.value; }
void from_json(const Json& j, PlayerId& id) { id = PlayerId(j.get<int>()); }

void to_json(Json& j, const Role& role) { j = std::string(to_string(role)); }
void from_json(const Json& j, Role& role) {
  auto r = role_from_string(j.get<std::string>());
  if (!r) throw std::invalid_argument("unknown role " + j.dump());
  role = *r;
}

void to_json(Json& j, const GameOutcome& o) {
  j = Json{{"winner", to_string(o.winner)}, {"reason", to_string(o.reason)}, {"final_round", o.final_round}};
}
void from_json(const Json& j, GameOutcome& o) {
  o.winner = enum_from(j.at("winner"), {Winner::WerewolfTeam, Winner::VillageTeam, Winner::Draw});
  o.reason = enum_from(j.at("reason"), {OutcomeReason::WerewolvesEliminated, OutcomeReason::WerewolfParity,
                                        OutcomeReason::MaxRoundsReached});
  o.final_round = j.at("final_round").get<int>();
}

void to_json(Json& j, const Phase& phase) {
  struct Visitor {
    Json operator()(const NightPhase& p) const { return {{"kind", "Night"}, {"round", p.round}}; }
    Json operator()(const DayPhase& p) const {
      return {{"kind", "Day"}, {"round", p.round}, {"stage", p.stage == DayStage::Discussion ? "Discussion" : "Voting"}};
    }
    Json operator()(const EndedPhase& p) const { return {{"kind", "Ended"}, {"outcome", p.outcome}}; }
  };
  j = std::visit(Visitor{}, phase);
}
void from_json(const Json& j, Phase& phase) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "Night") {
    phase = NightPhase{j.at("round").get<int>()};
  } else if (kind == "Day") {
    phase = DayPhase{j.at("round").get<int>(),
                     j.at("stage").get<std::string>() == "Voting" ? DayStage::Voting : DayStage::Discussion};
  } else if (kind == "Ended") {
    phase = EndedPhase{j.at("outcome").get<GameOutcome>()};
  } else {
    throw std::invalid_argument("unknown phase kind " + kind);
  }
}

void to_json(Json& j, const NightAction& action) {
  struct Visitor {
    Json operator()(const KillAction& a) const { return {{"verb", "KILL"}, {"target", a.target}}; }
    Json operator()(const RevealAction& a) const { return {{"verb", "REVEAL"}, {"target", a.target}}; }
    Json operator()(const WitchAction& a) const {
      if (a.cure) return {{"verb", "CURE"}};
      if (a.poison) return {{"verb", "POISON"}, {"target", *a.poison}};
      return {{"verb", "PASS"}, {"witch", true}};
    }
    Json operator()(const PassAction&) const { return {{"verb", "PASS"}}; }
  };
  j = std::visit(Visitor{}, action);
}
void from_json(const Json& j, NightAction& action) {
  const auto verb = j.at("verb").get<std::string>();
  if (verb == "KILL") {
    action = KillAction{j.at("target").get<PlayerId>()};
  } else if (verb == "REVEAL") {
    action = RevealAction{j.at("target").get<PlayerId>()};
  } else if (verb == "CURE") {
    action = WitchAction{true, std::nullopt};
  } else if (verb == "POISON") {
    action = WitchAction{false, j.at("target").get<PlayerId>()};
  } else if (verb == "PASS") {
    if (j.value("witch", false)) {
      action = WitchAction{};
    } else {
      action = PassAction{};
    }
  } else {
    throw std::invalid_argument("unknown night verb " + verb);
  }
}

void to_json(Json& j, const WerewolfKill& e) { j = Json{{"round", e.round}, {"target", e.target}}; }
void from_json(const Json& j, WerewolfKill& e) {
  e.round = j.at("round").get<int>();
  e.target = j.at("target").get<PlayerId>();
}

void to_json(Json& j, const WitchNight& e) {
  j = Json{{"round", e.round}, {"kill_target", opt(e.kill_target)}, {"cured", e.cured}, {"poisoned", opt(e.poisoned)}};
}
void from_json(const Json& j, WitchNight& e) {
  e.round = j.at("round").get<int>();
  e.kill_target = opt_from<PlayerId>(j, "kill_target");
  e.cured = j.at("cured").get<bool>();
  e.poisoned = opt_from<PlayerId>(j, "poisoned");
}

void to_json(Json& j, const EventPayload& payload) {
  struct Visitor {
    Json operator()(const PhaseChange& e) const { return {{"phase", e.phase}}; }
    Json operator()(const RoleAssignment& e) const {
      return {{"player", e.player}, {"role", e.role}, {"fellow_werewolves", e.fellow_werewolves}};
    }
    Json operator()(const NightActionSubmitted& e) const {
      return {{"round", e.round}, {"player", e.player}, {"action", e.action}};
    }
    Json operator()(const SeerReveal& e) const { return {{"round", e.round}, {"target", e.target}, {"role", e.role}}; }
    Json operator()(const WerewolfKill& e) const { return e; }
    Json operator()(const WitchNight& e) const { return e; }
    Json operator()(const NightResult& e) const { return {{"round", e.round}, {"deaths", e.deaths}}; }
    Json operator()(const StatementChunk& e) const {
      return {{"utterance", e.utterance}, {"speaker", e.speaker}, {"index", e.index}, {"text", e.text},
              {"is_final", e.is_final}};
    }
    Json operator()(const StatementDone& e) const {
      return {{"round", e.round}, {"speaker", e.speaker}, {"text", e.text}};
    }
    Json operator()(const VoteResult& e) const {
      return {{"round", e.round}, {"votes", id_map(e.votes)}, {"eliminated", opt(e.eliminated)}, {"tie", e.tie}};
    }
    Json operator()(const ActionRequest& e) const {
      return {{"player", e.player},           {"task", e.task},
              {"options", e.options},         {"deadline_ms", e.deadline_ms},
              {"kill_target", opt(e.kill_target)}};
    }
    Json operator()(const Fallback& e) const {
      return {{"player", e.player}, {"task", e.task}, {"reason", e.reason}, {"action", e.action}};
    }
    Json operator()(const Degradation& e) const {
      return {{"utterance", e.utterance}, {"index", e.index}, {"cause", e.cause}};
    }
    Json operator()(const OutcomeAnnounced& e) const { return {{"outcome", e.outcome}}; }
  };
  j = std::visit(Visitor{}, payload);
  j["type"] = payload_type(payload);
}

void from_json(const Json& j, EventPayload& payload) {
  const auto type = j.at("type").get<std::string>();
  if (type == "PhaseChange") {
    payload = PhaseChange{j.at("phase").get<Phase>()};
  } else if (type == "RoleAssignment") {
    payload = RoleAssignment{j.at("player").get<PlayerId>(), j.at("role").get<Role>(),
                             j.at("fellow_werewolves").get<std::vector<PlayerId>>()};
  } else if (type == "NightAction") {
    payload = NightActionSubmitted{j.at("round").get<int>(), j.at("player").get<PlayerId>(),
                                   j.at("action").get<NightAction>()};
  } else if (type == "SeerReveal") {
    payload = SeerReveal{j.at("round").get<int>(), j.at("target").get<PlayerId>(), j.at("role").get<Role>()};
  } else if (type == "WerewolfKill") {
    payload = j.get<WerewolfKill>();
  } else if (type == "WitchNight") {
    payload = j.get<WitchNight>();
  } else if (type == "NightResult") {
    payload = NightResult{j.at("round").get<int>(), j.at("deaths").get<std::vector<PlayerId>>()};
  } else if (type == "StatementChunk") {
    payload = StatementChunk{j.at("utterance").get<std::uint64_t>(), j.at("speaker").get<PlayerId>(),
                             j.at("index").get<std::size_t>(), j.at("text").get<std::string>(),
                             j.at("is_final").get<bool>()};
  } else if (type == "StatementDone") {
    payload = StatementDone{j.at("round").get<int>(), j.at("speaker").get<PlayerId>(), j.at("text").get<std::string>()};
  } else if (type == "VoteResult") {
    payload = VoteResult{j.at("round").get<int>(), id_map_from(j.at("votes")), opt_from<PlayerId>(j, "eliminated"),
                         j.at("tie").get<bool>()};
  } else if (type == "ActionRequest") {
    payload = ActionRequest{j.at("player").get<PlayerId>(), j.at("task").get<std::string>(),
                            j.at("options").get<std::vector<std::string>>(), j.at("deadline_ms").get<std::int64_t>(),
                            opt_from<PlayerId>(j, "kill_target")};
  } else if (type == "Fallback") {
    payload = Fallback{j.at("player").get<PlayerId>(), j.at("task").get<std::string>(),
                       j.at("reason").get<std::string>(), j.at("action").get<std::string>()};
  } else if (type == "Degradation") {
    payload = Degradation{j.at("utterance").get<std::uint64_t>(), j.at("index").get<std::size_t>(),
                          j.at("cause").get<std::string>()};
  } else if (type == "Outcome") {
    payload = OutcomeAnnounced{j.at("outcome").get<GameOutcome>()};
  } else {
    throw std::invalid_argument("unknown event type " + type);
  }
}

void to_json(Json& j, const Visibility& v) {
  j = Json{{"scope", scope_name(v.scope)}};
  if (v.scope == Visibility::Scope::Private) j["to"] = v.addressee;
}
void from_json(const Json& j, Visibility& v) {
  const auto scope = j.at("scope").get<std::string>();
  if (scope == "public") {
    v = Visibility::everyone();
  } else if (scope == "private") {
    v = Visibility::only(j.at("to").get<PlayerId>());
  } else if (scope == "system") {
    v = Visibility::system();
  } else {
    throw std::invalid_argument("unknown visibility " + scope);
  }
}

void to_json(Json& j, const GameEvent& e) { j = Json{{"visibility", e.visibility}, {"payload", e.payload}}; }
void from_json(const Json& j, GameEvent& e) {
  e.visibility = j.at("visibility").get<Visibility>();
  e.payload = j.at("payload").get<EventPayload>();
}

void to_json(Json& j, const GameConfig& c) {
  Json dist = Json::object();
  for (const auto& [role, n] : c.role_distribution) dist[std::string(to_string(role))] = n;
  j = Json{{"player_names", c.player_names}, {"role_distribution", dist},   {"max_rounds", c.max_rounds},
           {"rng_seed", c.rng_seed},         {"witch_cures", c.witch_cures}, {"witch_poisons", c.witch_poisons},
           {"neutral_aliases", c.neutral_aliases}};
}
void from_json(const Json& j, GameConfig& c) {
  GameConfig d;
  c.player_names = j.at("player_names").get<std::vector<std::string>>();
  c.role_distribution.clear();
  for (const auto& [name, n] : j.at("role_distribution").items()) {
    auto role = role_from_string(name);
    if (!role) throw std::invalid_argument("unknown role " + name);
    c.role_distribution[*role] = n.get<int>();
  }
  c.max_rounds = j.value("max_rounds", d.max_rounds);
  c.rng_seed = j.value("rng_seed", d.rng_seed);
  c.witch_cures = j.value("witch_cures", d.witch_cures);
  c.witch_poisons = j.value("witch_poisons", d.witch_poisons);
  c.neutral_aliases = j.value("neutral_aliases", d.neutral_aliases);
}

void to_json(Json& j, const PlayerState& p) {
  j = Json{{"id", p.id},
           {"name", p.name},
           {"role", p.role},
           {"status", p.active() ? "Active" : "Eliminated"},
           {"elimination_cause",
            p.elimination_cause ? Json(std::string(to_string(*p.elimination_cause))) : Json(nullptr)}};
}
void from_json(const Json& j, PlayerState& p) {
  p.id = j.at("id").get<PlayerId>();
  p.name = j.at("name").get<std::string>();
  p.role = j.at("role").get<Role>();
  p.status = j.at("status").get<std::string>() == "Active" ? PlayerStatus::Active : PlayerStatus::Eliminated;
  const auto& cause = j.at("elimination_cause");
  if (cause.is_null()) {
    p.elimination_cause.reset();
  } else {
    p.elimination_cause =
        enum_from(cause, {EliminationCause::WerewolfKill, EliminationCause::Poison, EliminationCause::Vote});
  }
}

void to_json(Json& j, const PendingNight& p) {
  Json witch = nullptr;
  if (p.witch_action) witch = NightAction{*p.witch_action};
  j = Json{{"werewolf_choices", id_map(p.werewolf_choices)},
           {"seer_submitted", p.seer_submitted},
           {"seer_target", opt(p.seer_target)},
           {"witch_action", witch},
           {"chosen_kill", opt(p.chosen_kill)}};
}
void from_json(const Json& j, PendingNight& p) {
  p.werewolf_choices = id_map_from(j.at("werewolf_choices"));
  p.seer_submitted = j.at("seer_submitted").get<bool>();
  p.seer_target = opt_from<PlayerId>(j, "seer_target");
  p.witch_action.reset();
  if (!j.at("witch_action").is_null()) p.witch_action = std::get<WitchAction>(j.at("witch_action").get<NightAction>());
  p.chosen_kill = opt_from<PlayerId>(j, "chosen_kill");
}

Json seer_dict_to_json(const std::map<PlayerId, Role>& dict) {
  Json out = Json::object();
  for (const auto& [id, role] : dict) out[std::to_string(id.value)] = role;
  return out;
}

void to_json(Json& j, const GameState& s) {
  j = Json{{"config", s.config},
           {"players", s.players},
           {"round", s.round},
           {"phase", s.phase},
           {"game_status", s.game_status},
           {"num_cure", s.num_cure},
           {"num_poison", s.num_poison},
           {"log", s.log},
           {"werewolf_log", s.werewolf_log},
           {"witch_log", s.witch_log},
           {"seer_dict", seer_dict_to_json(s.seer_dict)},
           {"pending_night", s.pending_night},
           {"discussion_turn", s.discussion_turn},
           {"rng", {{"seed", s.rng.seed()}, {"draws", s.rng.draws()}}}};
}

void from_json(const Json& j, GameState& s) {
  s.config = j.at("config").get<GameConfig>();
  s.players = j.at("players").get<std::vector<PlayerState>>();
  s.round = j.at("round").get<int>();
  s.phase = j.at("phase").get<Phase>();
  s.game_status = j.at("game_status").get<bool>();
  s.num_cure = j.at("num_cure").get<int>();
  s.num_poison = j.at("num_poison").get<int>();
  s.log = j.at("log").get<std::vector<EventPayload>>();
  s.werewolf_log = j.at("werewolf_log").get<std::vector<WerewolfKill>>();
  s.witch_log = j.at("witch_log").get<std::vector<WitchNight>>();
  s.seer_dict.clear();
  for (const auto& [k, v] : j.at("seer_dict").items()) s.seer_dict[PlayerId(std::stoi(k))] = v.get<Role>();
  s.pending_night = j.at("pending_night").get<PendingNight>();
  s.discussion_turn = j.at("discussion_turn").get<std::size_t>();
  const auto& rng = j.at("rng");
  s.rng = RngStream(rng.at("seed").get<std::uint64_t>(), rng.at("draws").get<std::uint64_t>());
}

void to_json(Json& j, const PlayerView& v) {
  Json active = Json::array();
  for (const auto& p : v.active_players) active.push_back({{"id", p.id}, {"name", p.name}});
  j = Json{{"self_id", v.self_id}, {"self_name", v.self_name},   {"self_role", v.self_role},
           {"self_active", v.self_active}, {"round", v.round}, {"phase", v.phase},
           {"active_players", active},     {"log", v.log}};
  if (v.fellow_werewolves) j["fellow_werewolves"] = *v.fellow_werewolves;
  if (v.werewolf_log) j["werewolf_log"] = *v.werewolf_log;
  if (v.seer_dict) j["seer_dict"] = seer_dict_to_json(*v.seer_dict);
  if (v.witch_log) j["witch_log"] = *v.witch_log;
  if (v.num_cure) j["num_cure"] = *v.num_cure;
  if (v.num_poison) j["num_poison"] = *v.num_poison;
  if (v.night_kill_target) j["night_kill_target"] = *v.night_kill_target;
}

std::string canonical_dump(const GameState& state) { return Json(state).dump(); }

std::string state_digest(const GameState& state) {
  const std::string bytes = canonical_dump(state);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr);
  std::string hex;
  hex.reserve(len * 2);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace werewolf
