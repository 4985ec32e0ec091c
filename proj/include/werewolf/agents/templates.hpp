#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace werewolf::agents {

using TemplateVars = std::map<std::string, std::string>;

/// Substitutes {{name}} placeholders. Unknown placeholders throw
/// std::invalid_argument so typos in edited templates surface early.
std::string render_template(std::string_view source, const TemplateVars& vars);

/// Named prompt templates. The built-in set is compiled from templates/*.txt;
/// a directory of .txt files can override any of them at runtime.
class TemplateSet {
 public:
  static const TemplateSet& builtin();
  /// Files in `dir` named <template>.txt replace the corresponding entries.
  static TemplateSet load(const std::filesystem::path& dir, const TemplateSet& base = builtin());

  bool has(const std::string& name) const { return sources_.contains(name); }
  /// Source text with one trailing newline removed.
  const std::string& source(const std::string& name) const;
  std::string render(const std::string& name, const TemplateVars& vars) const;

  const std::map<std::string, std::string>& sources() const noexcept { return sources_; }

 private:
  std::map<std::string, std::string> sources_;
};

}  // namespace werewolf::agents
