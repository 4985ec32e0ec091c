#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace werewolf {

enum class GameErrorCode {
  InvalidConfig,
  UnknownPlayer,
  WrongPhase,
  IllegalAction,
  DuplicateSubmission,
  MissingSubmission,
  OutOfTurn,
  EliminatedSpeaker,
  MissingVote,
  InactiveTarget,
  InactiveVoter,
  ReplayMismatch,
};

std::string_view to_string(GameErrorCode code) noexcept;

/// Raised by every rules operation that rejects its input. The state passed
/// in is never modified when this is thrown.
class GameError : public std::runtime_error {
 public:
  GameError(GameErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  GameErrorCode code() const noexcept { return code_; }

 private:
  GameErrorCode code_;
};

}  // namespace werewolf
