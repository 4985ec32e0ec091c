#include "werewolf/session/orchestrator.hpp"

#include <future>

#include "werewolf/core/serialize.hpp"

namespace werewolf::session {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::vector<std::string> split_options(const std::string& rendered) {
  std::vector<std::string> out;
  for (std::size_t pos = 0; pos < rendered.size();) {
    auto bar = rendered.find(" | ", pos);
    if (bar == std::string::npos) bar = rendered.size();
    out.push_back(rendered.substr(pos, bar - pos));
    pos = bar + 3;
  }
  return out;
}

}  // namespace

std::uint64_t decision_seed(std::uint64_t game_seed, int round, PlayerId player, agents::Task task) {
  std::uint64_t h = splitmix(game_seed);
  h = splitmix(h ^ static_cast<std::uint64_t>(round));
  h = splitmix(h ^ static_cast<std::uint64_t>(player.value));
  return splitmix(h ^ static_cast<std::uint64_t>(task));
}

std::vector<std::shared_ptr<agents::Agent>> make_agents(const std::vector<agents::AgentBinding>& bindings,
                                                        AgentEnvironment& env) {
  std::vector<std::shared_ptr<agents::Agent>> out(bindings.size());
  for (const auto& b : bindings) {
    if (b.player.index() >= out.size()) throw std::invalid_argument("binding for unknown player");
    std::shared_ptr<agents::Agent> agent;
    if (const auto* l = std::get_if<agents::LlmBinding>(&b.kind)) {
      if (!env.llm) throw std::invalid_argument("LLM binding without an LLM backend");
      agents::LlmAgentOptions opts = env.llm_defaults;
      if (!l->model.empty()) opts.model = l->model;
      opts.temperature = l->temperature;
      opts.max_tokens = l->max_tokens;
      agent = std::make_shared<agents::LlmAgent>(env.llm, opts, env.templates);
    } else if (const auto* s = std::get_if<agents::ScriptedBinding>(&b.kind)) {
      agent = std::make_shared<agents::ScriptedAgent>(s->policy);
    } else {
      auto& seat = env.seats[b.player];
      if (!seat) seat = std::make_shared<agents::HumanSeat>();
      agent = std::make_shared<agents::HumanAgent>(seat, env.human_deadline);
    }
    out[b.player.index()] = std::move(agent);
  }
  return out;
}

Session::Session(GameConfig config, std::vector<agents::AgentBinding> bindings, SessionDeps deps,
                 SessionOptions options)
    : config_(std::move(config)),
      bindings_(std::move(bindings)),
      deps_(std::move(deps)),
      options_(std::move(options)),
      aliases_(config_.player_names) {
  config_.validate();
  agents::validate_bindings(bindings_, config_.player_names.size());
  if (deps_.agents.size() != config_.player_names.size()) throw std::invalid_argument("need one agent per player");
  for (const auto& a : deps_.agents) {
    if (!a) throw std::invalid_argument("missing agent");
  }
  options_.prompt.neutral_aliases = config_.neutral_aliases;
  if (deps_.tts) {
    auto sink = deps_.sink ? deps_.sink : std::make_shared<speech::NullSink>();
    pipeline_ = std::make_unique<speech::SpeechPipeline>(deps_.tts, deps_.voices, sink, options_.pipeline);
  }
}

Session::~Session() = default;

void Session::add_listener(EventListener listener) { listeners_.push_back(std::move(listener)); }

void Session::emit(Visibility visibility, EventPayload payload) {
  SessionEvent e;
  e.seq = events_.size();
  e.timestamp_ms = options_.time == TimeSource::Logical
                       ? static_cast<std::int64_t>(e.seq)
                       : std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started_)
                             .count();
  e.visibility = visibility;
  e.payload = std::move(payload);
  events_.push_back(e);
  for (const auto& l : listeners_) l(events_.back());
}

void Session::emit_all(const std::vector<GameEvent>& events) {
  for (const auto& e : events) emit(e.visibility, e.payload);
}

std::string seat_voice(const std::vector<agents::AgentBinding>& bindings, const speech::VoiceRegistry& voices,
                       PlayerId player) {
  for (const auto& binding : bindings) {
    if (binding.player == player && !binding.voice_id.empty() && voices.contains(binding.voice_id)) {
      return binding.voice_id;
    }
  }
  return voices.for_seat(player.index()).voice_id;
}

agents::PromptContext Session::context_for(PlayerId player, agents::Task task) const {
  return agents::PromptContext{view_for(state_, player), task, aliases_, options_.prompt,
                               decision_seed(config_.rng_seed, state_.round, player, task)};
}

void Session::announce_request(PlayerId player, agents::Task task, const agents::PromptContext& ctx) {
  auto& agent = *deps_.agents[player.index()];
  if (!agent.is_human()) return;
  agent.prepare(ctx);
  ActionRequest req;
  req.player = player;
  req.task = std::string(agents::to_string(task));
  if (task != agents::Task::Discuss) req.options = split_options(agents::render_options(ctx.view));
  req.deadline_ms = options_.human_deadline.count();
  if (task == agents::Task::NightAction) req.kill_target = ctx.view.night_kill_target;
  emit(Visibility::only(player), std::move(req));
}

agents::AgentTurn Session::ask(PlayerId player, agents::Task task, const agents::TextSink& on_text,
                               const agents::PromptContext& ctx) {
  agents::AgentTurn turn;
  try {
    turn = deps_.agents[player.index()]->act(ctx, on_text);
  } catch (const std::exception& ex) {
    turn = agents::fallback_turn(ctx, std::string("agent error: ") + ex.what(), on_text);
  }
  if (task != agents::Task::Discuss) {
    const auto legal = legal_actions_for(ctx.view);
    if (!turn.reply.action || !is_legal(legal, *turn.reply.action)) {
      const std::string what = turn.reply.action ? describe(*turn.reply.action) : std::string("nothing");
      auto fixed = agents::fallback_turn(ctx, "agent returned an unusable action: " + what, {});
      fixed.attempts = turn.attempts;
      turn = std::move(fixed);
    }
  }
  return turn;
}

void Session::note_turn(PlayerId player, agents::Task task, const agents::AgentTurn& turn) {
  if (!turn.fallback) return;
  ++stats_.fallbacks;
  emit(Visibility::system(),
       Fallback{player, std::string(agents::to_string(task)), *turn.fallback,
                turn.reply.action ? describe(*turn.reply.action) : std::string("SPEAK")});
}

void Session::run_night() {
  const int round = state_.round;
  auto submit = [&](PlayerId player, const agents::AgentTurn& turn) {
    note_turn(player, agents::Task::NightAction, turn);
    const NightAction action = *to_night_action(*turn.reply.action);
    state_ = submit_night_action(state_, player, action);
    emit(Visibility::only(player), NightActionSubmitted{round, player, action});
  };

  // Werewolves decide together from the same information.
  const auto wolves = state_.players_with_role(Role::Werewolf);
  std::vector<PlayerId> pack;
  for (PlayerId w : wolves) {
    if (state_.player(w).active()) pack.push_back(w);
  }
  std::vector<agents::PromptContext> contexts;
  for (PlayerId w : pack) {
    contexts.push_back(context_for(w, agents::Task::NightAction));
    announce_request(w, agents::Task::NightAction, contexts.back());
  }
  std::vector<agents::AgentTurn> turns(pack.size());
  if (options_.concurrent_werewolves && pack.size() > 1) {
    std::vector<std::future<agents::AgentTurn>> pending;
    for (std::size_t i = 0; i < pack.size(); ++i) {
      pending.push_back(std::async(std::launch::async, [this, &pack, &contexts, i] {
        return ask(pack[i], agents::Task::NightAction, {}, contexts[i]);
      }));
    }
    for (std::size_t i = 0; i < pack.size(); ++i) turns[i] = pending[i].get();
  } else {
    for (std::size_t i = 0; i < pack.size(); ++i) turns[i] = ask(pack[i], agents::Task::NightAction, {}, contexts[i]);
  }
  for (std::size_t i = 0; i < pack.size(); ++i) submit(pack[i], turns[i]);

  for (Role role : {Role::Seer, Role::Witch}) {
    const auto who = state_.active_with_role(role);
    if (!who || night_turn(state_) != role) continue;
    const auto ctx = context_for(*who, agents::Task::NightAction);
    announce_request(*who, agents::Task::NightAction, ctx);
    submit(*who, ask(*who, agents::Task::NightAction, {}, ctx));
  }

  auto t = resolve_night(state_);
  state_ = std::move(t.state);
  emit_all(t.events);
}

void Session::run_discussion_turn(PlayerId speaker) {
  const auto ctx = context_for(speaker, agents::Task::Discuss);
  announce_request(speaker, agents::Task::Discuss, ctx);

  const std::uint64_t utterance = next_utterance_++;
  if (pipeline_) pipeline_->open(utterance, seat_voice(bindings_, deps_.voices, speaker), speech::Clock::now());
  speech::Segmenter segmenter(utterance, options_.segmenter);
  auto forward = [&](const std::vector<speech::SentenceChunk>& chunks) {
    for (const auto& c : chunks) {
      emit(Visibility::everyone(), StatementChunk{c.utterance, speaker, c.index, c.text, c.is_final});
      if (pipeline_) pipeline_->submit(c);
    }
  };
  const auto turn = ask(speaker, agents::Task::Discuss, [&](std::string_view text) { forward(segmenter.feed(text)); },
                        ctx);
  forward(segmenter.finish());
  note_turn(speaker, agents::Task::Discuss, turn);

  auto t = record_statement(state_, speaker, turn.reply.statement_text);
  state_ = std::move(t.state);
  emit_all(t.events);

  if (pipeline_) {
    pipeline_->close(utterance);
    auto metrics = pipeline_->wait(utterance);
    for (const auto& d : metrics.degradations) {
      ++stats_.degradations;
      emit(Visibility::system(), Degradation{utterance, d.index, d.cause});
    }
    stats_.utterances.push_back(std::move(metrics));
  }
}

void Session::run_vote() {
  std::map<PlayerId, PlayerId> votes;
  for (PlayerId voter : state_.active_players()) {
    const auto ctx = context_for(voter, agents::Task::Vote);
    announce_request(voter, agents::Task::Vote, ctx);
    const auto turn = ask(voter, agents::Task::Vote, {}, ctx);
    note_turn(voter, agents::Task::Vote, turn);
    votes[voter] = std::get<VoteAction>(*turn.reply.action).target;
  }
  auto t = process_voting(state_, votes);
  state_ = std::move(t.state);
  emit_all(t.events);
}

SessionRecord Session::run() {
  started_ = std::chrono::steady_clock::now();
  events_.clear();
  next_utterance_ = 0;
  stats_ = {};
  state_ = new_game(config_);
  emit_all(opening_events(state_));

  while (state_.game_status) {
    if (std::holds_alternative<NightPhase>(state_.phase)) {
      run_night();
    } else if (const auto* day = std::get_if<DayPhase>(&state_.phase)) {
      if (day->stage == DayStage::Discussion) {
        while (auto speaker = next_speaker(state_)) run_discussion_turn(*speaker);
      } else {
        run_vote();
      }
    }
  }

  SessionRecord record;
  record.config = config_;
  record.bindings = bindings_;
  record.events = events_;
  record.final_digest = state_digest(state_);
  if (const auto* ended = std::get_if<EndedPhase>(&state_.phase)) record.outcome = ended->outcome;
  return record;
}

}  // namespace werewolf::session
