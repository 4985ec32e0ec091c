#include "werewolf/agents/reply.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "werewolf/core/game.hpp"
#include "werewolf/llm/cache_bust.hpp"

namespace werewolf::agents {
namespace {

constexpr std::string_view kDecoration = " \t*`>_#-";
constexpr std::string_view kTagHead = "[[nonce ";
constexpr std::string_view kTagSuffix = " (request bookkeeping; ignore)";

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

enum class LineClass { Undecided, Action, Text };

LineClass classify(std::string_view held) {
  std::size_t i = 0;
  while (i < held.size() && kDecoration.find(held[i]) != std::string_view::npos) ++i;
  const std::string rest = lower(held.substr(i));
  constexpr std::string_view kw = "action";
  if (rest.empty()) return LineClass::Undecided;
  if (rest.size() < kw.size()) return kw.substr(0, rest.size()) == rest ? LineClass::Undecided : LineClass::Text;
  if (rest.compare(0, kw.size(), kw) != 0) return LineClass::Text;
  std::size_t j = kw.size();
  while (j < rest.size() && std::string_view(" \t*`_").find(rest[j]) != std::string_view::npos) ++j;
  if (j == rest.size()) return LineClass::Undecided;
  return rest[j] == ':' ? LineClass::Action : LineClass::Text;
}

struct TagScan {
  enum Status { Partial, Fail, Drop } status;
  std::size_t n = 0;
};

TagScan scan_tag(std::string_view s) {
  const std::size_t k = std::min(s.size(), kTagHead.size());
  if (s.substr(0, k) != kTagHead.substr(0, k)) return {TagScan::Fail};
  if (s.size() <= kTagHead.size()) return {TagScan::Partial};
  std::size_t i = kTagHead.size();
  while (i < s.size() && s[i] != ']' && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i == s.size()) return {TagScan::Partial};
  if (s[i++] != ' ') return {TagScan::Fail};
  if (i == s.size()) return {TagScan::Partial};
  if (s[i++] != '#') return {TagScan::Fail};
  const std::size_t digits = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == s.size()) return {TagScan::Partial};
  if (i == digits || s[i++] != ']') return {TagScan::Fail};
  if (i == s.size()) return {TagScan::Partial};
  if (s[i++] != ']') return {TagScan::Fail};
  const std::string_view rest = s.substr(i);
  if (rest.size() < kTagSuffix.size()) {
    return kTagSuffix.substr(0, rest.size()) == rest ? TagScan{TagScan::Partial} : TagScan{TagScan::Drop, i};
  }
  return rest.substr(0, kTagSuffix.size()) == kTagSuffix ? TagScan{TagScan::Drop, i + kTagSuffix.size()}
                                                         : TagScan{TagScan::Drop, i};
}

ParseFailure failure(ParseFailureKind kind, std::string why, const PlayerView& view) {
  const std::string options = render_options(view);
  why += " Reply with a final line 'ACTION: <VERB> [<PLAYER>]'";
  if (!options.empty()) why += " using one of: " + options;
  why += ".";
  return {kind, std::move(why)};
}

bool needs_target(const std::string& verb) {
  return verb == "VOTE" || verb == "KILL" || verb == "REVEAL" || verb == "POISON";
}

}  // namespace

std::string_view to_string(ParseFailureKind kind) noexcept {
  switch (kind) {
    case ParseFailureKind::Malformed: return "malformed";
    case ParseFailureKind::IllegalTarget: return "illegal-target";
    case ParseFailureKind::UnknownName: return "unknown-name";
  }
  return "";
}

// --- StatementFilter ---------------------------------------------------------

std::string StatementFilter::feed(std::string_view text) {
  std::string out;
  for (char c : text) on_char(c, out);
  return out;
}

std::string StatementFilter::finish() {
  std::string out;
  if (!line_hold_.empty()) {
    std::string held = std::move(line_hold_);
    line_hold_.clear();
    if (classify(held) != LineClass::Action) {
      for (char c : held) pass(c, out);
    }
  }
  flush_tag(out, true);
  return out;
}

std::string StatementFilter::apply(std::string_view text) {
  StatementFilter f;
  std::string out = f.feed(text);
  out += f.finish();
  return out;
}

void StatementFilter::on_char(char c, std::string& out) {
  if (dropping_line_) {
    if (c == '\n') {
      dropping_line_ = false;
      line_start_ = true;
    }
    return;
  }
  if (!line_start_) {
    pass(c, out);
    return;
  }
  if (c == '\n') {
    std::string held = std::move(line_hold_);
    line_hold_.clear();
    for (char h : held) pass(h, out);
    pass(c, out);
    return;
  }
  line_hold_ += c;
  switch (classify(line_hold_)) {
    case LineClass::Undecided:
      return;
    case LineClass::Action:
      line_hold_.clear();
      line_start_ = false;
      dropping_line_ = true;
      return;
    case LineClass::Text: {
      std::string held = std::move(line_hold_);
      line_hold_.clear();
      line_start_ = false;
      for (char h : held) pass(h, out);
      return;
    }
  }
}

void StatementFilter::pass(char c, std::string& out) {
  if (tag_hold_.empty() && c != '[') {
    out += c;
    if (c == '\n') line_start_ = true;
    return;
  }
  tag_hold_ += c;
  flush_tag(out, false);
}

void StatementFilter::flush_tag(std::string& out, bool at_end) {
  if (tag_hold_.empty()) return;
  if (at_end) {
    out += llm::strip_nonce_tags(tag_hold_);
    tag_hold_.clear();
    return;
  }
  const TagScan scan = scan_tag(tag_hold_);
  if (scan.status == TagScan::Partial) return;
  std::string rest;
  if (scan.status == TagScan::Fail) {
    out += tag_hold_.front();
    rest = tag_hold_.substr(1);
  } else {
    rest = tag_hold_.substr(scan.n);
  }
  tag_hold_.clear();
  for (char c : rest) pass(c, out);
}

// --- parsing -----------------------------------------------------------------

std::optional<std::string> find_action_line(std::string_view text) {
  static const std::regex kAction(R"((?:^|[^A-Za-z0-9])action[\s*`_]*:(.*)$)", std::regex::icase);
  std::optional<std::string> found;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string line(text.substr(start, end - start));
    std::smatch m;
    if (std::regex_search(line, m, kAction)) found = m[1].str();
    start = end + 1;
  }
  return found;
}

ParseResult parse_reply(std::string_view raw, Task task, const PlayerView& view, const AliasMap& aliases) {
  const std::string text = llm::strip_nonce_tags(raw);
  const std::string statement = trim(StatementFilter::apply(text));
  if (task == Task::Discuss) {
    if (statement.empty()) {
      return ParseFailure{ParseFailureKind::Malformed,
                          "Your statement was empty. Reply with one short paragraph of what you say to the table."};
    }
    return ParsedReply{statement, std::nullopt, std::string(raw)};
  }

  const auto line = find_action_line(text);
  if (!line) return failure(ParseFailureKind::Malformed, "The ACTION line is missing.", view);

  std::string content;
  for (char c : *line) {
    if (std::string_view("*`\"'<>[]()").find(c) == std::string_view::npos) content += c;
  }
  content = trim(content);
  while (!content.empty() && std::string_view(".!,;").find(content.back()) != std::string_view::npos) {
    content.pop_back();
  }
  content = trim(content);
  const auto space = content.find_first_of(" \t");
  const std::string verb = upper(content.substr(0, space));
  const std::string target_token = space == std::string::npos ? "" : trim(content.substr(space));

  static const std::vector<std::string> kVerbs = {"VOTE", "KILL", "REVEAL", "CURE", "POISON", "PASS"};
  if (std::find(kVerbs.begin(), kVerbs.end(), verb) == kVerbs.end()) {
    return failure(ParseFailureKind::Malformed, "'" + verb + "' is not a known verb.", view);
  }
  if (needs_target(verb) && target_token.empty()) {
    return failure(ParseFailureKind::Malformed, verb + " needs a player.", view);
  }

  std::optional<PlayerId> target;
  if (!target_token.empty() && verb != "PASS") {
    target = aliases.resolve(target_token);
    if (!target) return failure(ParseFailureKind::UnknownName, "There is no player called '" + target_token + "'.", view);
  }

  std::string canonical = verb;
  if (verb == "CURE") {
    if (target && target != view.night_kill_target) {
      return failure(ParseFailureKind::IllegalTarget, "The cure only works on tonight's victim.", view);
    }
  } else if (target) {
    canonical += " " + alias_of(*target);
  }

  for (const auto& action : legal_actions_for(view)) {
    if (std::holds_alternative<SpeakAction>(action)) continue;
    if (describe(action) == canonical) return ParsedReply{statement, action, std::string(raw)};
  }
  return failure(ParseFailureKind::IllegalTarget, "'" + canonical + "' is not allowed now.", view);
}

}  // namespace werewolf::agents
