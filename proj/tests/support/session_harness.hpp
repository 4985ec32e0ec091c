#pragma once

// Builders for whole sessions plus a recording transport double.

#include <mutex>
#include <string>
#include <vector>

#include "werewolf/llm/mock_backend.hpp"
#include "werewolf/session/hub.hpp"
#include "werewolf/session/orchestrator.hpp"

namespace werewolf::testing {

inline std::vector<agents::AgentBinding> scripted_bindings(std::size_t players,
                                                           agents::ScriptedPolicy policy = agents::ScriptedPolicy::RandomSeeded) {
  std::vector<agents::AgentBinding> out;
  for (std::size_t i = 0; i < players; ++i) {
    out.push_back({PlayerId::from_index(i), agents::ScriptedBinding{policy}, ""});
  }
  return out;
}

inline std::vector<agents::AgentBinding> llm_bindings(std::size_t players) {
  std::vector<agents::AgentBinding> out;
  for (std::size_t i = 0; i < players; ++i) {
    out.push_back({PlayerId::from_index(i), agents::LlmBinding{"mock", 0.7, 256, ""}, ""});
  }
  return out;
}

struct SessionSetup {
  GameConfig config;
  std::vector<agents::AgentBinding> bindings;
  std::shared_ptr<llm::ChatBackend> llm;
  std::shared_ptr<speech::TtsBackend> tts;
  session::SessionOptions options;
  std::map<PlayerId, std::shared_ptr<agents::HumanSeat>> seats;
};

inline std::unique_ptr<session::Session> make_session(SessionSetup& setup) {
  session::AgentEnvironment env;
  env.llm = setup.llm;
  env.llm_defaults.model = "mock";
  env.seats = setup.seats;
  env.human_deadline = setup.options.human_deadline;
  session::SessionDeps deps;
  deps.agents = session::make_agents(setup.bindings, env);
  setup.seats = env.seats;
  deps.tts = setup.tts;
  return std::make_unique<session::Session>(setup.config, setup.bindings, std::move(deps), setup.options);
}

inline session::SessionRecord run_scripted(std::uint64_t seed,
                                           agents::ScriptedPolicy policy = agents::ScriptedPolicy::RandomSeeded) {
  SessionSetup setup;
  setup.config = GameConfig::standard(seed);
  setup.bindings = scripted_bindings(6, policy);
  return make_session(setup)->run();
}

/// Keeps every frame sent to it.
class RecordingConnection final : public session::Connection {
 public:
  void send(const std::string& frame) override {
    std::lock_guard lock(mu_);
    frames_.push_back(frame);
  }
  std::vector<std::string> frames() const {
    std::lock_guard lock(mu_);
    return frames_;
  }
  std::vector<Json> parsed() const {
    std::vector<Json> out;
    for (const auto& f : frames()) out.push_back(Json::parse(f));
    return out;
  }
  std::vector<Json> of_type(const std::string& type) const {
    std::vector<Json> out;
    for (auto& j : parsed()) {
      if (j["type"] == type) out.push_back(std::move(j));
    }
    return out;
  }
  void clear() {
    std::lock_guard lock(mu_);
    frames_.clear();
  }

 private:
  mutable std::mutex mu_;
  std::vector<std::string> frames_;
};

}  // namespace werewolf::testing
