#include "werewolf/agents/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "werewolf/core/game.hpp"

namespace werewolf::agents {
namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string lower_role(Role role) {
  std::string s(to_string(role));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string phase_words(const Phase& phase) {
  if (std::holds_alternative<NightPhase>(phase)) return "night";
  if (const auto* day = std::get_if<DayPhase>(&phase)) {
    return day->stage == DayStage::Discussion ? "day, discussion" : "day, voting";
  }
  return "game over";
}

std::string winner_words(const GameOutcome& o) {
  switch (o.winner) {
    case Winner::VillageTeam: return "the village wins";
    case Winner::WerewolfTeam: return "the werewolves win";
    case Winner::Draw: return "the game is a draw";
  }
  return "";
}

enum class LineKind { Statement, Phase, Key };

struct Line {
  LineKind kind;
  std::string text;
};

}  // namespace

std::string_view to_string(Task task) noexcept {
  switch (task) {
    case Task::Discuss: return "discuss";
    case Task::Vote: return "vote";
    case Task::NightAction: return "night_action";
  }
  return "";
}

std::optional<Task> task_from_string(std::string_view name) noexcept {
  if (name == "discuss") return Task::Discuss;
  if (name == "vote") return Task::Vote;
  if (name == "night_action") return Task::NightAction;
  return std::nullopt;
}

std::optional<Task> task_for(const PlayerView& view) {
  if (!view.self_active) return std::nullopt;
  if (const auto* day = std::get_if<DayPhase>(&view.phase)) {
    return day->stage == DayStage::Discussion ? Task::Discuss : Task::Vote;
  }
  if (std::holds_alternative<NightPhase>(view.phase) && view.self_role != Role::Villager) return Task::NightAction;
  return std::nullopt;
}

std::string label(const PromptContext& ctx, PlayerId id) {
  if (ctx.options.neutral_aliases || id.index() >= ctx.aliases.size()) return alias_of(id);
  return ctx.aliases.name_of(id) + " (" + alias_of(id) + ")";
}

std::string render_fellow_werewolves(const std::vector<PlayerId>& fellows) {
  if (fellows.empty()) return "none (you are the only one)";
  std::vector<std::string> names;
  for (PlayerId id : fellows) names.push_back(alias_of(id));
  return join(names, ", ");
}

std::string render_werewolf_log(const std::vector<WerewolfKill>& log) {
  if (log.empty()) return "none yet";
  std::vector<std::string> parts;
  for (const auto& k : log) parts.push_back("night " + std::to_string(k.round) + " target " + alias_of(k.target));
  return join(parts, "; ");
}

std::string render_seer_dict(const std::map<PlayerId, Role>& dict) {
  if (dict.empty()) return "nothing yet";
  std::vector<std::string> parts;
  for (const auto& [id, role] : dict) parts.push_back(alias_of(id) + " is a " + std::string(to_string(role)));
  return join(parts, "; ");
}

std::string render_witch_log(const std::vector<WitchNight>& log) {
  if (log.empty()) return "none yet";
  std::vector<std::string> parts;
  for (const auto& w : log) {
    std::string s = "night " + std::to_string(w.round) + ": ";
    s += w.kill_target ? "the werewolves attacked " + alias_of(*w.kill_target) : "nobody was attacked";
    if (w.cured) s += ", you cured them";
    if (w.poisoned) s += ", you poisoned " + alias_of(*w.poisoned);
    if (!w.cured && !w.poisoned) s += ", you did nothing";
    parts.push_back(std::move(s));
  }
  return join(parts, "; ");
}

std::vector<std::string> render_history(const PromptContext& ctx) {
  auto who = [&](PlayerId id) { return label(ctx, id); };
  std::deque<Line> lines;
  for (const auto& entry : ctx.view.log) {
    if (const auto* pc = std::get_if<PhaseChange>(&entry)) {
      if (const auto* night = std::get_if<NightPhase>(&pc->phase)) {
        lines.push_back({LineKind::Phase, "Night " + std::to_string(night->round) + " began."});
      } else if (const auto* day = std::get_if<DayPhase>(&pc->phase)) {
        lines.push_back({LineKind::Phase, "Day " + std::to_string(day->round) +
                                              (day->stage == DayStage::Discussion ? " discussion began."
                                                                                  : " voting began.")});
      }
    } else if (const auto* nr = std::get_if<NightResult>(&entry)) {
      std::string text = "Night " + std::to_string(nr->round) + ": ";
      if (nr->deaths.empty()) {
        text += "nobody died.";
      } else {
        std::vector<std::string> dead;
        for (PlayerId id : nr->deaths) dead.push_back(who(id));
        text += join(dead, " and ") + (dead.size() == 1 ? " was" : " were") + " found dead.";
      }
      lines.push_back({LineKind::Key, std::move(text)});
    } else if (const auto* st = std::get_if<StatementDone>(&entry)) {
      std::string said = ctx.options.neutral_aliases ? ctx.aliases.scrub(st->text) : st->text;
      std::replace(said.begin(), said.end(), '\n', ' ');
      lines.push_back({LineKind::Statement, "Day " + std::to_string(st->round) + ", " + who(st->speaker) +
                                                " said: \"" + said + "\""});
    } else if (const auto* vr = std::get_if<VoteResult>(&entry)) {
      std::vector<std::string> votes;
      for (const auto& [voter, target] : vr->votes) votes.push_back(who(voter) + "->" + who(target));
      std::string text = "Day " + std::to_string(vr->round) + " vote: " + join(votes, ", ") + ". ";
      text += vr->eliminated ? who(*vr->eliminated) + " was voted out." : "Tie, nobody was voted out.";
      lines.push_back({LineKind::Key, std::move(text)});
    } else if (const auto* oc = std::get_if<OutcomeAnnounced>(&entry)) {
      lines.push_back({LineKind::Key, "Game over: " + winner_words(oc->outcome) + "."});
    }
  }

  std::size_t total = 0;
  for (const auto& l : lines) total += l.text.size() + 1;
  bool omitted = false;
  for (LineKind victim : {LineKind::Statement, LineKind::Phase}) {
    for (auto it = lines.begin(); total > ctx.options.history_char_budget && it != lines.end();) {
      if (it->kind == victim) {
        total -= it->text.size() + 1;
        it = lines.erase(it);
        omitted = true;
      } else {
        ++it;
      }
    }
  }

  std::vector<std::string> out;
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) out.push_back(it->text);
  if (omitted) out.push_back("(older discussion omitted)");
  if (out.empty()) out.push_back("(nothing has happened yet)");
  return out;
}

std::string render_options(const PlayerView& view) {
  std::vector<std::string> options;
  for (const auto& a : legal_actions_for(view)) {
    if (!std::holds_alternative<SpeakAction>(a)) options.push_back(describe(a));
  }
  return join(options, " | ");
}

std::string format_instructions(const PromptContext& ctx, const TemplateSet& templates) {
  if (ctx.task == Task::Discuss) return templates.render("format_statement", {});
  return templates.render("format_action", {{"options", render_options(ctx.view)}});
}

std::vector<llm::ChatMessage> build_prompt(const PromptContext& ctx, const TemplateSet& templates) {
  const PlayerView& v = ctx.view;
  const std::string self = label(ctx, v.self_id);

  const std::string system = templates.render(
      "system", {{"self", self}, {"player_count", std::to_string(ctx.aliases.size())}, {"role", std::string(to_string(v.self_role))}});

  std::vector<std::string> active;
  for (const auto& p : v.active_players) active.push_back(label(ctx, p.id));

  std::string private_section;
  switch (v.self_role) {
    case Role::Werewolf:
      private_section = templates.render(
          "private_werewolf",
          {{"fellow_werewolves", render_fellow_werewolves(v.fellow_werewolves.value_or(std::vector<PlayerId>{}))},
           {"werewolf_log", render_werewolf_log(v.werewolf_log.value_or(std::vector<WerewolfKill>{}))}});
      break;
    case Role::Seer:
      private_section = templates.render(
          "private_seer", {{"seer_dict", render_seer_dict(v.seer_dict.value_or(std::map<PlayerId, Role>{}))}});
      break;
    case Role::Witch: {
      std::string notice;
      if (v.night_kill_target) notice = "Tonight the werewolves attacked " + alias_of(*v.night_kill_target) + ".";
      private_section = templates.render(
          "private_witch", {{"num_cure", std::to_string(v.num_cure.value_or(0))},
                            {"num_poison", std::to_string(v.num_poison.value_or(0))},
                            {"witch_log", render_witch_log(v.witch_log.value_or(std::vector<WitchNight>{}))},
                            {"kill_notice", notice}});
      break;
    }
    case Role::Villager:
      break;
  }
  while (!private_section.empty() && private_section.back() == '\n') private_section.pop_back();
  if (!private_section.empty()) private_section += "\n";

  std::string task;
  switch (ctx.task) {
    case Task::Discuss: task = templates.render("task_discuss", {}); break;
    case Task::Vote: task = templates.render("task_vote", {}); break;
    case Task::NightAction: task = templates.render("task_night_" + lower_role(v.self_role), {}); break;
  }

  std::string history;
  for (const auto& line : render_history(ctx)) history += "- " + line + "\n";
  if (!history.empty()) history.pop_back();

  const std::string user = templates.render(
      "user", {{"self", self},
               {"round", std::to_string(v.round)},
               {"phase", phase_words(v.phase)},
               {"active_players", join(active, ", ")},
               {"objective", templates.render("objective_" + lower_role(v.self_role), {})},
               {"private", private_section},
               {"history", history},
               {"task", task},
               {"format", format_instructions(ctx, templates)}});
  return {{"system", system}, {"user", user}};
}

}  // namespace werewolf::agents
