#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "werewolf/agents/alias.hpp"
#include "werewolf/agents/prompt.hpp"
#include "werewolf/core/state.hpp"

namespace werewolf::agents {

// Reply grammar: free text, then a final line
//   ACTION: <VERB> [<PLAYER>]
// with VERB one of VOTE KILL REVEAL CURE POISON PASS (case-insensitive) and
// PLAYER a label like P4 (or a true name). Markdown decoration such as
// **ACTION:** or `ACTION: VOTE P4` is tolerated. Discussion replies carry no
// action; any ACTION line in them is dropped from the statement.

struct ParsedReply {
  std::string statement_text;
  std::optional<Action> action;  // unset for Discuss
  std::string raw;
};

enum class ParseFailureKind { Malformed, IllegalTarget, UnknownName };

std::string_view to_string(ParseFailureKind kind) noexcept;

struct ParseFailure {
  ParseFailureKind kind = ParseFailureKind::Malformed;
  std::string hint;  // shown to the model on retry
};

using ParseResult = std::variant<ParsedReply, ParseFailure>;

/// Nonce tags are removed before anything else.
ParseResult parse_reply(std::string_view raw, Task task, const PlayerView& view, const AliasMap& aliases);

/// Text after "ACTION:" on the last action line, if any.
std::optional<std::string> find_action_line(std::string_view text);

/// Turns a streamed discussion reply into speakable text: drops ACTION lines
/// and nonce tags while the reply is still streaming. Output depends only on
/// the concatenated input, never on how it was split.
class StatementFilter {
 public:
  std::string feed(std::string_view text);
  std::string finish();

  static std::string apply(std::string_view text);

 private:
  void on_char(char c, std::string& out);
  void pass(char c, std::string& out);
  void flush_tag(std::string& out, bool at_end);

  bool line_start_ = true;
  bool dropping_line_ = false;
  std::string line_hold_;
  std::string tag_hold_;
};

}  // namespace werewolf::agents
