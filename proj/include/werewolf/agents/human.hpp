#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>
#include <string>

#include "werewolf/agents/agent.hpp"

namespace werewolf::agents {

/// Mailbox between a connected human client and the seat's agent. The
/// network side posts submissions; the agent waits for them.
class HumanSeat {
 public:
  void post(std::string text);
  /// Next submission, or nullopt once the deadline passes.
  std::optional<std::string> wait_until(std::chrono::steady_clock::time_point deadline);
  /// Drops submissions that arrived outside a request.
  void clear();

  /// The task currently awaiting a submission ("discuss", "vote",
  /// "night_action"), if any. Opening drops stale submissions unless the
  /// same task is already open.
  void open(std::string task);
  void close();
  std::optional<std::string> open_task() const;

  /// Called with a hint when a submission is rejected.
  void set_reject_handler(std::function<void(const std::string&)> handler);
  void reject(const std::string& hint);

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::string> inbox_;
  std::optional<std::string> open_task_;
  std::function<void(const std::string&)> on_reject_;
};

/// Statements are taken verbatim; actions use the reply grammar with or
/// without the "ACTION:" prefix. Invalid submissions are rejected with a
/// hint and the seat may try again until the deadline, after which the
/// fallback applies.
class HumanAgent final : public Agent {
 public:
  explicit HumanAgent(std::shared_ptr<HumanSeat> seat,
                      std::chrono::milliseconds deadline = std::chrono::seconds(120));

  void prepare(const PromptContext& ctx) override;
  AgentTurn act(const PromptContext& ctx, const TextSink& on_text) override;
  bool is_human() const override { return true; }
  std::chrono::milliseconds deadline() const noexcept { return deadline_; }

 private:
  std::shared_ptr<HumanSeat> seat_;
  std::chrono::milliseconds deadline_;
};

}  // namespace werewolf::agents
