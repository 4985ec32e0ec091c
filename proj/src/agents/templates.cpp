#include "werewolf/agents/templates.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace werewolf::agents {
namespace detail {
const std::map<std::string, std::string>& builtin_template_sources();
}

namespace {

std::string trim_newline(std::string s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

std::string render_template(std::string_view source, const TemplateVars& vars) {
  std::string out;
  std::size_t at = 0;
  while (at < source.size()) {
    const std::size_t open = source.find("{{", at);
    if (open == std::string_view::npos) {
      out.append(source.substr(at));
      break;
    }
    const std::size_t close = source.find("}}", open + 2);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated placeholder in template");
    out.append(source.substr(at, open - at));
    const std::string name(source.substr(open + 2, close - open - 2));
    const auto it = vars.find(name);
    if (it == vars.end()) throw std::invalid_argument("unknown template placeholder: " + name);
    out += it->second;
    at = close + 2;
  }
  return out;
}

const TemplateSet& TemplateSet::builtin() {
  static const TemplateSet set = [] {
    TemplateSet s;
    for (const auto& [name, body] : detail::builtin_template_sources()) s.sources_[name] = trim_newline(body);
    return s;
  }();
  return set;
}

TemplateSet TemplateSet::load(const std::filesystem::path& dir, const TemplateSet& base) {
  TemplateSet out = base;
  if (!std::filesystem::is_directory(dir)) throw std::invalid_argument("template directory not found: " + dir.string());
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    out.sources_[entry.path().stem().string()] = trim_newline(buffer.str());
  }
  return out;
}

const std::string& TemplateSet::source(const std::string& name) const {
  const auto it = sources_.find(name);
  if (it == sources_.end()) throw std::invalid_argument("no such template: " + name);
  return it->second;
}

std::string TemplateSet::render(const std::string& name, const TemplateVars& vars) const {
  return render_template(source(name), vars);
}

}  // namespace werewolf::agents
