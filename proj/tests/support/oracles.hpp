#pragma once

// Brute-force oracles for judge and process_voting. They re-derive the
// rules from scratch and never call into the engine's tally or judge code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "werewolf/core/error.hpp"
#include "werewolf/core/game.hpp"

namespace werewolf::testing {

struct OracleReport {
  std::uint64_t cases = 0;
  std::uint64_t mismatches = 0;
  std::string first_mismatch;

  void mismatch(const std::string& what) {
    if (mismatches++ == 0) first_mismatch = what;
  }
};

// Win rule: village wins when no werewolf is active; werewolves win once
// they are at least as many as everyone else; a draw only past max_rounds.
inline std::optional<Winner> judge_oracle(const std::vector<Role>& roles, const std::vector<bool>& alive, int round,
                                          int max_rounds) {
  int w = 0;
  int v = 0;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (!alive[i]) continue;
    if (roles[i] == Role::Werewolf) {
      w += 1;
    } else {
      v += 1;
    }
  }
  if (w == 0) return Winner::VillageTeam;
  if (w >= v) return Winner::WerewolfTeam;
  if (round > max_rounds) return Winner::Draw;
  return std::nullopt;
}

/// Every role/status assignment of 1..6 players, at rounds around max_rounds.
inline OracleReport check_judge_exhaustively(int max_players = 6) {
  OracleReport report;
  const int max_rounds = 3;
  for (int n = 1; n <= max_players; ++n) {
    GameState base;
    base.config.max_rounds = max_rounds;
    base.players.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) base.players[static_cast<std::size_t>(i)].id = PlayerId(i + 1);

    std::uint64_t combos = 1;
    for (int i = 0; i < n; ++i) combos *= 8;  // 4 roles x 2 statuses
    for (std::uint64_t code = 0; code < combos; ++code) {
      std::vector<Role> roles(static_cast<std::size_t>(n));
      std::vector<bool> alive(static_cast<std::size_t>(n));
      std::uint64_t c = code;
      for (int i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        roles[idx] = kAllRoles[c % 4];
        alive[idx] = ((c / 4) % 2) == 0;
        c /= 8;
        base.players[idx].role = roles[idx];
        base.players[idx].status = alive[idx] ? PlayerStatus::Active : PlayerStatus::Eliminated;
      }
      for (int round : {1, max_rounds, max_rounds + 1}) {
        base.round = round;
        ++report.cases;
        const auto expected = judge_oracle(roles, alive, round, max_rounds);
        const auto got = judge(base);
        const auto again = judge(base);
        const bool agree = expected.has_value() == got.has_value() && (!expected || *expected == got->winner);
        if (!agree || got != again) {
          report.mismatch("n=" + std::to_string(n) + " code=" + std::to_string(code) + " round=" +
                          std::to_string(round));
        }
      }
    }
  }
  return report;
}

struct VoteExpectation {
  bool rejected = false;
  GameErrorCode error = GameErrorCode::IllegalAction;
  std::optional<PlayerId> eliminated;
  bool tie = false;
};

inline VoteExpectation vote_oracle(const std::vector<PlayerId>& voters, const std::vector<PlayerId>& targets) {
  VoteExpectation out;
  for (std::size_t i = 0; i < voters.size(); ++i) {
    if (voters[i] == targets[i]) {
      out.rejected = true;
      out.error = GameErrorCode::IllegalAction;
      return out;
    }
  }
  if (targets.empty()) return out;
  std::vector<int> sorted;
  for (PlayerId t : targets) sorted.push_back(t.value);
  std::sort(sorted.begin(), sorted.end());
  int best_count = 0;
  int best_target = 0;
  int holders = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const int run = static_cast<int>(j - i);
    if (run > best_count) {
      best_count = run;
      best_target = sorted[i];
      holders = 1;
    } else if (run == best_count) {
      ++holders;
    }
    i = j;
  }
  if (holders == 1) {
    out.eliminated = PlayerId(best_target);
  } else {
    out.tie = true;
  }
  return out;
}

/// All vote maps (self votes included, which must be rejected) for every
/// active subset of 2..5 voters drawn from six players, over a few role
/// layouts. Also checks the post-vote judgement against judge_oracle.
inline OracleReport check_voting_exhaustively() {
  OracleReport report;
  const std::vector<std::vector<Role>> layouts = {
      {Role::Werewolf, Role::Werewolf, Role::Villager, Role::Villager, Role::Seer, Role::Witch},
      {Role::Villager, Role::Seer, Role::Werewolf, Role::Witch, Role::Villager, Role::Werewolf},
      {Role::Werewolf, Role::Villager, Role::Villager, Role::Villager, Role::Villager, Role::Seer},
  };
  for (const auto& roles : layouts) {
    for (unsigned mask = 0; mask < (1u << 6); ++mask) {
      std::vector<PlayerId> active;
      for (int i = 0; i < 6; ++i) {
        if (mask & (1u << i)) active.push_back(PlayerId(i + 1));
      }
      if (active.size() < 2 || active.size() > 5) continue;

      GameState s;
      s.config.max_rounds = 15;
      s.round = 2;
      s.phase = DayPhase{2, DayStage::Voting};
      for (int i = 0; i < 6; ++i) {
        PlayerState p;
        p.id = PlayerId(i + 1);
        p.role = roles[static_cast<std::size_t>(i)];
        if (!(mask & (1u << i))) {
          p.status = PlayerStatus::Eliminated;
          p.elimination_cause = EliminationCause::Vote;
        }
        s.players.push_back(p);
      }

      const std::size_t k = active.size();
      std::uint64_t combos = 1;
      for (std::size_t i = 0; i < k; ++i) combos *= k;
      for (std::uint64_t code = 0; code < combos; ++code) {
        std::vector<PlayerId> targets(k);
        std::map<PlayerId, PlayerId> votes;
        std::uint64_t c = code;
        for (std::size_t i = 0; i < k; ++i) {
          targets[i] = active[c % k];
          c /= k;
          votes[active[i]] = targets[i];
        }
        ++report.cases;
        const auto expected = vote_oracle(active, targets);
        try {
          const auto t = process_voting(s, votes);
          if (expected.rejected) {
            report.mismatch("accepted a self vote, mask=" + std::to_string(mask));
            continue;
          }
          if (t.tally.eliminated != expected.eliminated || t.tally.tie != expected.tie) {
            report.mismatch("tally differs, mask=" + std::to_string(mask) + " code=" + std::to_string(code));
            continue;
          }
          std::vector<bool> alive;
          std::vector<Role> rs;
          for (const auto& p : s.players) {
            alive.push_back(p.active() && (!expected.eliminated || p.id != *expected.eliminated));
            rs.push_back(p.role);
          }
          const auto winner = judge_oracle(rs, alive, s.round, s.config.max_rounds);
          const bool ended = !t.state.game_status;
          if (ended != winner.has_value()) {
            report.mismatch("judgement differs, mask=" + std::to_string(mask) + " code=" + std::to_string(code));
          }
        } catch (const GameError& e) {
          if (!expected.rejected || e.code() != expected.error) {
            report.mismatch(std::string("unexpected error ") + e.what());
          }
        }
      }
    }
  }
  return report;
}

}  // namespace werewolf::testing
