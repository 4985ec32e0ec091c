#include "werewolf/core/game.hpp"

#include <algorithm>
#include <set>

#include "werewolf/core/error.hpp"

namespace werewolf {

// --- GameState / PlayerView helpers ----------------------------------------

const PlayerState& GameState::player(PlayerId id) const {
  if (!has_player(id)) throw GameError(GameErrorCode::UnknownPlayer, alias_of(id));
  return players[id.index()];
}

PlayerState& GameState::player(PlayerId id) {
  if (!has_player(id)) throw GameError(GameErrorCode::UnknownPlayer, alias_of(id));
  return players[id.index()];
}

std::vector<PlayerId> GameState::active_players() const {
  std::vector<PlayerId> out;
  for (const auto& p : players) {
    if (p.active()) out.push_back(p.id);
  }
  return out;
}

std::vector<PlayerId> GameState::players_with_role(Role role) const {
  std::vector<PlayerId> out;
  for (const auto& p : players) {
    if (p.role == role) out.push_back(p.id);
  }
  return out;
}

std::optional<PlayerId> GameState::active_with_role(Role role) const {
  for (const auto& p : players) {
    if (p.role == role && p.active()) return p.id;
  }
  return std::nullopt;
}

int GameState::active_count(Team team) const noexcept {
  int n = 0;
  for (const auto& p : players) {
    if (p.active() && team_of(p.role) == team) ++n;
  }
  return n;
}

bool PlayerView::is_active(PlayerId id) const noexcept {
  return std::any_of(active_players.begin(), active_players.end(),
                     [id](const PlayerSummary& s) { return s.id == id; });
}

namespace {

bool is_night(const GameState& s) { return std::holds_alternative<NightPhase>(s.phase); }

bool is_day(const GameState& s, DayStage stage) {
  const auto* day = std::get_if<DayPhase>(&s.phase);
  return day != nullptr && day->stage == stage;
}

[[noreturn]] void wrong_phase(const GameState& s, const char* expected) {
  throw GameError(GameErrorCode::WrongPhase, std::string("expected ") + expected + ", game is in " + describe(s.phase));
}

GameEvent public_event(EventPayload payload) { return {Visibility::everyone(), std::move(payload)}; }

// Appends to the public log and to the returned event list together so the
// public subsequence of emitted events always equals the log.
void publish(GameState& s, std::vector<GameEvent>& events, EventPayload payload) {
  s.log.push_back(payload);
  events.push_back(public_event(std::move(payload)));
}

void enter_phase(GameState& s, std::vector<GameEvent>& events, Phase phase) {
  s.phase = phase;
  publish(s, events, PhaseChange{std::move(phase)});
}

// Ends the game if judge says so. Returns true when the game ended.
bool apply_judgement(GameState& s, std::vector<GameEvent>& events) {
  auto outcome = judge(s);
  if (!outcome) return false;
  s.game_status = false;
  s.pending_night = {};
  publish(s, events, OutcomeAnnounced{*outcome});
  enter_phase(s, events, EndedPhase{*outcome});
  return true;
}

void eliminate(GameState& s, PlayerId id, EliminationCause cause) {
  auto& p = s.player(id);
  if (!p.active()) return;
  p.status = PlayerStatus::Eliminated;
  p.elimination_cause = cause;
}

}  // namespace

// --- setup -------------------------------------------------------------------

GameState new_game(const GameConfig& config) {
  config.validate();

  std::vector<Role> roles;
  for (Role r : kAllRoles) {
    auto it = config.role_distribution.find(r);
    if (it == config.role_distribution.end()) continue;
    roles.insert(roles.end(), static_cast<std::size_t>(it->second), r);
  }

  GameState s;
  s.config = config;
  s.rng = RngStream(config.rng_seed);
  s.rng.shuffle(std::span<Role>(roles));

  for (std::size_t i = 0; i < config.player_names.size(); ++i) {
    s.players.push_back(PlayerState{PlayerId::from_index(i), config.player_names[i], roles[i], PlayerStatus::Active, std::nullopt});
  }
  s.round = 1;
  s.phase = NightPhase{1};
  s.game_status = true;
  s.num_cure = config.witch_cures;
  s.num_poison = config.witch_poisons;
  return s;
}

std::vector<GameEvent> opening_events(const GameState& state) {
  std::vector<GameEvent> events;
  const auto wolves = state.players_with_role(Role::Werewolf);
  for (const auto& p : state.players) {
    RoleAssignment card{p.id, p.role, {}};
    if (p.role == Role::Werewolf) {
      for (PlayerId w : wolves) {
        if (w != p.id) card.fellow_werewolves.push_back(w);
      }
    }
    events.push_back({Visibility::only(p.id), card});
  }
  events.push_back(public_event(PhaseChange{state.phase}));
  return events;
}

// --- legality ----------------------------------------------------------------

std::vector<Action> legal_actions_for(const PlayerView& view) {
  std::vector<Action> out;
  if (!view.self_active) return out;

  auto others = [&] {
    std::vector<PlayerId> ids;
    for (const auto& s : view.active_players) {
      if (s.id != view.self_id) ids.push_back(s.id);
    }
    return ids;
  };

  if (const auto* day = std::get_if<DayPhase>(&view.phase)) {
    if (day->stage == DayStage::Discussion) {
      out.emplace_back(SpeakAction{});
    } else {
      for (PlayerId t : others()) out.emplace_back(VoteAction{t});
    }
    return out;
  }
  if (!std::holds_alternative<NightPhase>(view.phase)) return out;

  switch (view.self_role) {
    case Role::Villager:
      break;
    case Role::Werewolf: {
      const auto& pack = view.fellow_werewolves ? *view.fellow_werewolves : std::vector<PlayerId>{};
      for (PlayerId t : others()) {
        if (std::find(pack.begin(), pack.end(), t) == pack.end()) out.emplace_back(KillAction{t});
      }
      break;
    }
    case Role::Seer:
      for (PlayerId t : others()) out.emplace_back(RevealAction{t});
      out.emplace_back(PassAction{});
      break;
    case Role::Witch: {
      out.emplace_back(WitchAction{});
      if (view.num_cure.value_or(0) >= 1 && view.night_kill_target) out.emplace_back(WitchAction{true, std::nullopt});
      if (view.num_poison.value_or(0) >= 1) {
        for (PlayerId t : others()) out.emplace_back(WitchAction{false, t});
      }
      break;
    }
  }
  return out;
}

std::vector<Action> legal_actions(const GameState& state, PlayerId player) {
  return legal_actions_for(view_for(state, player));
}

bool is_legal(const std::vector<Action>& legal, const Action& action) {
  return std::find(legal.begin(), legal.end(), action) != legal.end();
}

// --- night -------------------------------------------------------------------

std::optional<Role> night_turn(const GameState& s) {
  if (!is_night(s)) return std::nullopt;
  for (const auto& p : s.players) {
    if (p.active() && p.role == Role::Werewolf && !s.pending_night.werewolf_choices.contains(p.id)) {
      return Role::Werewolf;
    }
  }
  if (s.active_with_role(Role::Seer) && !s.pending_night.seer_submitted) return Role::Seer;
  if (s.active_with_role(Role::Witch) && !s.pending_night.witch_action) return Role::Witch;
  return std::nullopt;
}

GameState submit_night_action(const GameState& state, PlayerId player, const NightAction& action) {
  if (!is_night(state)) wrong_phase(state, "Night");
  const auto& actor = state.player(player);

  // A witch "PASS" is her empty concatenated action.
  NightAction normalized = action;
  if (actor.role == Role::Witch && std::holds_alternative<PassAction>(action)) normalized = WitchAction{};

  const auto legal = legal_actions(state, player);
  if (!is_legal(legal, to_action(normalized))) {
    throw GameError(GameErrorCode::IllegalAction,
                    describe(to_action(normalized)) + " is not available to " + alias_of(player) + " (" +
                        std::string(to_string(actor.role)) + ")");
  }

  GameState next = state;
  auto& pending = next.pending_night;
  switch (actor.role) {
    case Role::Werewolf: {
      if (pending.werewolf_choices.contains(player)) {
        throw GameError(GameErrorCode::DuplicateSubmission, alias_of(player) + " already chose a target");
      }
      pending.werewolf_choices[player] = std::get<KillAction>(normalized).target;
      const bool pack_done = std::all_of(next.players.begin(), next.players.end(), [&](const PlayerState& p) {
        return !(p.active() && p.role == Role::Werewolf) || pending.werewolf_choices.contains(p.id);
      });
      if (pack_done) {
        std::set<PlayerId> targets;
        for (const auto& [wolf, target] : pending.werewolf_choices) targets.insert(target);
        if (targets.size() == 1) {
          pending.chosen_kill = *targets.begin();
        } else {
          std::vector<PlayerId> ordered(targets.begin(), targets.end());
          pending.chosen_kill = ordered[static_cast<std::size_t>(next.rng.uniform(ordered.size()))];
        }
      }
      break;
    }
    case Role::Seer:
      if (pending.seer_submitted) {
        throw GameError(GameErrorCode::DuplicateSubmission, alias_of(player) + " already acted tonight");
      }
      pending.seer_submitted = true;
      if (const auto* reveal = std::get_if<RevealAction>(&normalized)) pending.seer_target = reveal->target;
      break;
    case Role::Witch:
      if (pending.witch_action) {
        throw GameError(GameErrorCode::DuplicateSubmission, alias_of(player) + " already acted tonight");
      }
      if (!pending.chosen_kill) {
        throw GameError(GameErrorCode::OutOfTurn, "the witch acts after the werewolves have chosen");
      }
      pending.witch_action = std::get<WitchAction>(normalized);
      break;
    case Role::Villager:
      break;  // unreachable: villagers have no legal night action
  }
  return next;
}

Transition resolve_night(const GameState& state) {
  if (!is_night(state)) wrong_phase(state, "Night");
  for (const auto& p : state.players) {
    if (p.active() && p.role == Role::Werewolf && !state.pending_night.werewolf_choices.contains(p.id)) {
      throw GameError(GameErrorCode::MissingSubmission, alias_of(p.id) + " has not chosen a target");
    }
  }

  Transition t{state, {}};
  GameState& s = t.state;
  const PendingNight pending = s.pending_night;
  const int round = s.round;
  std::vector<PlayerId> deaths;

  // Werewolves.
  std::optional<PlayerId> kill = pending.chosen_kill;
  const auto pack = s.active_players();

  // Seer.
  if (auto seer = s.active_with_role(Role::Seer); seer && pending.seer_target) {
    const Role truth = s.player(*pending.seer_target).role;
    s.seer_dict[*pending.seer_target] = truth;
    t.events.push_back({Visibility::only(*seer), SeerReveal{round, *pending.seer_target, truth}});
  }

  // Witch.
  if (auto witch = s.active_with_role(Role::Witch)) {
    const WitchAction act = pending.witch_action.value_or(WitchAction{});
    WitchNight record{round, kill, false, std::nullopt};
    if (act.cure && kill) {
      record.cured = true;
      kill.reset();
      --s.num_cure;
    }
    if (act.poison) {
      record.poisoned = act.poison;
      eliminate(s, *act.poison, EliminationCause::Poison);
      deaths.push_back(*act.poison);
      --s.num_poison;
    }
    s.witch_log.push_back(record);
    t.events.push_back({Visibility::only(*witch), record});
  }

  // The surviving kill lands last.
  if (kill && s.player(*kill).active()) {
    eliminate(s, *kill, EliminationCause::WerewolfKill);
    deaths.push_back(*kill);
  }

  if (pending.chosen_kill) {
    const WerewolfKill entry{round, *pending.chosen_kill};
    s.werewolf_log.push_back(entry);
    for (PlayerId id : pack) {
      if (state.player(id).role == Role::Werewolf) t.events.push_back({Visibility::only(id), entry});
    }
  }

  std::sort(deaths.begin(), deaths.end());
  deaths.erase(std::unique(deaths.begin(), deaths.end()), deaths.end());
  s.pending_night = {};
  publish(s, t.events, NightResult{round, deaths});

  if (!apply_judgement(s, t.events)) {
    s.discussion_turn = 0;
    enter_phase(s, t.events, DayPhase{round, DayStage::Discussion});
  }
  return t;
}

// --- day ---------------------------------------------------------------------

std::optional<PlayerId> next_speaker(const GameState& state) {
  if (!is_day(state, DayStage::Discussion)) return std::nullopt;
  const auto active = state.active_players();
  if (state.discussion_turn >= active.size()) return std::nullopt;
  return active[state.discussion_turn];
}

Transition record_statement(const GameState& state, PlayerId player, const std::string& text) {
  if (!is_day(state, DayStage::Discussion)) wrong_phase(state, "Day discussion");
  if (!state.player(player).active()) {
    throw GameError(GameErrorCode::EliminatedSpeaker, alias_of(player) + " has been eliminated");
  }
  const auto expected = next_speaker(state);
  if (!expected || *expected != player) {
    throw GameError(GameErrorCode::OutOfTurn, "it is " + (expected ? alias_of(*expected) : std::string("nobody")) +
                                                  "'s turn, not " + alias_of(player) + "'s");
  }

  Transition t{state, {}};
  GameState& s = t.state;
  publish(s, t.events, StatementDone{s.round, player, text});
  ++s.discussion_turn;
  if (s.discussion_turn >= s.active_players().size()) {
    enter_phase(s, t.events, DayPhase{s.round, DayStage::Voting});
  }
  return t;
}

VotingTransition process_voting(const GameState& state, const std::map<PlayerId, PlayerId>& votes) {
  if (!is_day(state, DayStage::Voting)) wrong_phase(state, "Day voting");

  for (const auto& [voter, target] : votes) {
    if (!state.has_player(voter) || !state.player(voter).active()) {
      throw GameError(GameErrorCode::InactiveVoter, alias_of(voter) + " cannot vote");
    }
    if (!state.has_player(target) || !state.player(target).active()) {
      throw GameError(GameErrorCode::InactiveTarget, alias_of(target) + " is not an active player");
    }
    if (voter == target) throw GameError(GameErrorCode::IllegalAction, alias_of(voter) + " voted for themselves");
  }
  for (PlayerId id : state.active_players()) {
    if (!votes.contains(id)) throw GameError(GameErrorCode::MissingVote, alias_of(id) + " did not vote");
  }

  std::map<PlayerId, int> counts;
  for (const auto& [voter, target] : votes) ++counts[target];
  int top = 0;
  for (const auto& [target, n] : counts) top = std::max(top, n);
  std::vector<PlayerId> leaders;
  for (const auto& [target, n] : counts) {
    if (n == top) leaders.push_back(target);
  }

  VotingTransition t{state, VoteTally{votes, std::nullopt, false}, {}};
  if (leaders.size() == 1) {
    t.tally.eliminated = leaders.front();
  } else if (!votes.empty()) {
    t.tally.tie = true;
  }

  GameState& s = t.state;
  if (t.tally.eliminated) eliminate(s, *t.tally.eliminated, EliminationCause::Vote);
  publish(s, t.events, VoteResult{s.round, votes, t.tally.eliminated, t.tally.tie});

  if (apply_judgement(s, t.events)) return t;
  ++s.round;
  if (apply_judgement(s, t.events)) return t;
  enter_phase(s, t.events, NightPhase{s.round});
  return t;
}

// --- judging -----------------------------------------------------------------

std::optional<GameOutcome> judge(const GameState& state) {
  const int wolves = state.active_count(Team::Werewolf);
  const int village = state.active_count(Team::Village);
  const int max_rounds = state.config.max_rounds;
  const int final_round = std::min(state.round, max_rounds);
  if (wolves == 0) return GameOutcome{Winner::VillageTeam, OutcomeReason::WerewolvesEliminated, final_round};
  if (wolves >= village) return GameOutcome{Winner::WerewolfTeam, OutcomeReason::WerewolfParity, final_round};
  if (state.round > max_rounds) return GameOutcome{Winner::Draw, OutcomeReason::MaxRoundsReached, max_rounds};
  return std::nullopt;
}

// --- visibility --------------------------------------------------------------

PlayerView view_for(const GameState& state, PlayerId player) {
  const auto& self = state.player(player);

  PlayerView v;
  v.self_id = self.id;
  v.self_name = self.name;
  v.self_role = self.role;
  v.self_active = self.active();
  v.round = state.round;
  v.phase = state.phase;
  for (const auto& p : state.players) {
    if (p.active()) v.active_players.push_back({p.id, p.name});
  }
  v.log = state.log;

  switch (self.role) {
    case Role::Werewolf: {
      std::vector<PlayerId> pack;
      for (const auto& p : state.players) {
        if (p.role == Role::Werewolf && p.id != self.id) pack.push_back(p.id);
      }
      v.fellow_werewolves = std::move(pack);
      v.werewolf_log = state.werewolf_log;
      break;
    }
    case Role::Seer:
      v.seer_dict = state.seer_dict;
      break;
    case Role::Witch:
      v.witch_log = state.witch_log;
      v.num_cure = state.num_cure;
      v.num_poison = state.num_poison;
      if (std::holds_alternative<NightPhase>(state.phase)) v.night_kill_target = state.pending_night.chosen_kill;
      break;
    case Role::Villager:
      break;
  }
  return v;
}

}  // namespace werewolf
