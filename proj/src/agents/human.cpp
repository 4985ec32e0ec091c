#include "werewolf/agents/human.hpp"

#include <regex>

namespace werewolf::agents {

void HumanSeat::post(std::string text) {
  {
    std::lock_guard lock(mu_);
    inbox_.push_back(std::move(text));
  }
  cv_.notify_all();
}

std::optional<std::string> HumanSeat::wait_until(std::chrono::steady_clock::time_point deadline) {
  std::unique_lock lock(mu_);
  if (!cv_.wait_until(lock, deadline, [&] { return !inbox_.empty(); })) return std::nullopt;
  std::string text = std::move(inbox_.front());
  inbox_.pop_front();
  return text;
}

void HumanSeat::clear() {
  std::lock_guard lock(mu_);
  inbox_.clear();
}

void HumanSeat::open(std::string task) {
  std::lock_guard lock(mu_);
  if (open_task_ != task) inbox_.clear();
  open_task_ = std::move(task);
}

void HumanSeat::close() {
  std::lock_guard lock(mu_);
  open_task_.reset();
}

std::optional<std::string> HumanSeat::open_task() const {
  std::lock_guard lock(mu_);
  return open_task_;
}

void HumanSeat::set_reject_handler(std::function<void(const std::string&)> handler) {
  std::lock_guard lock(mu_);
  on_reject_ = std::move(handler);
}

void HumanSeat::reject(const std::string& hint) {
  std::function<void(const std::string&)> handler;
  {
    std::lock_guard lock(mu_);
    handler = on_reject_;
  }
  if (handler) handler(hint);
}

HumanAgent::HumanAgent(std::shared_ptr<HumanSeat> seat, std::chrono::milliseconds deadline)
    : seat_(std::move(seat)), deadline_(deadline) {}

void HumanAgent::prepare(const PromptContext& ctx) { seat_->open(std::string(to_string(ctx.task))); }

AgentTurn HumanAgent::act(const PromptContext& ctx, const TextSink& on_text) {
  static const std::regex kHasAction(R"(action[\s*`_]*:)", std::regex::icase);
  const auto deadline = std::chrono::steady_clock::now() + deadline_;
  int attempts = 0;
  seat_->open(std::string(to_string(ctx.task)));
  struct Closer {
    HumanSeat& seat;
    ~Closer() { seat.close(); }
  } closer{*seat_};
  while (auto text = seat_->wait_until(deadline)) {
    ++attempts;
    std::string raw = std::move(*text);
    if (ctx.task != Task::Discuss && !std::regex_search(raw, kHasAction)) raw = "ACTION: " + raw;
    auto parsed = parse_reply(raw, ctx.task, ctx.view, ctx.aliases);
    if (auto* ok = std::get_if<ParsedReply>(&parsed)) {
      if (ctx.task == Task::Discuss && on_text) on_text(ok->statement_text);
      return AgentTurn{std::move(*ok), std::nullopt, attempts};
    }
    const auto& fail = std::get<ParseFailure>(parsed);
    seat_->reject(std::string(to_string(fail.kind)) + ": " + fail.hint);
  }
  AgentTurn turn = fallback_turn(ctx, "deadline: no valid submission", on_text);
  turn.attempts = attempts;
  return turn;
}

}  // namespace werewolf::agents
