#include "werewolf/agents/alias.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace werewolf::agents {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

AliasMap::AliasMap(std::vector<std::string> names) : names_(std::move(names)) {}

std::optional<std::string> AliasMap::alias_for_name(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return werewolf::alias_of(PlayerId::from_index(i));
  }
  return std::nullopt;
}

std::optional<std::string> AliasMap::name_for_alias(std::string_view alias) const {
  const auto id = resolve(alias);
  if (!id || werewolf::alias_of(*id) != alias) return std::nullopt;
  return names_[id->index()];
}

std::optional<PlayerId> AliasMap::resolve(std::string_view token) const {
  static const std::regex kLabel(R"(^\s*(?:[Pp]|[Pp]layer\s*)(\d{1,6})\s*$)");
  const std::string s(token);
  std::smatch m;
  if (std::regex_match(s, m, kLabel)) {
    const int id = std::stoi(m[1]);
    if (id >= 1 && static_cast<std::size_t>(id) <= names_.size()) return PlayerId(id);
    return std::nullopt;
  }
  const std::string wanted = lower(s);
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (lower(names_[i]) == wanted) return PlayerId::from_index(i);
  }
  return std::nullopt;
}

std::string AliasMap::scrub(std::string_view text) const {
  std::vector<std::size_t> order(names_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return names_[a].size() > names_[b].size(); });
  std::string out(text);
  for (std::size_t i : order) {
    const std::string& name = names_[i];
    if (name.empty()) continue;
    const std::string alias = werewolf::alias_of(PlayerId::from_index(i));
    std::size_t at = 0;
    while ((at = out.find(name, at)) != std::string::npos) {
      const bool left_ok = at == 0 || !word_char(out[at - 1]);
      const std::size_t end = at + name.size();
      const bool right_ok = end >= out.size() || !word_char(out[end]);
      if (left_ok && right_ok) {
        out.replace(at, name.size(), alias);
        at += alias.size();
      } else {
        at = end;
      }
    }
  }
  return out;
}

}  // namespace werewolf::agents
