#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace werewolf {

/// Seeded generator whose full state is (seed, draws). Uniform picks use
/// rejection sampling directly on the engine output so results do not
/// depend on the standard library's distribution implementations.
class RngStream {
 public:
  RngStream() : RngStream(0) {}
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}
  RngStream(std::uint64_t seed, std::uint64_t draws) : seed_(seed), draws_(draws), engine_(seed) {
    engine_.discard(draws);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t draws() const noexcept { return draws_; }

  std::uint64_t next() {
    ++draws_;
    return engine_();
  }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  friend bool operator==(const RngStream& a, const RngStream& b) noexcept {
    return a.seed_ == b.seed_ && a.draws_ == b.draws_;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
};

}  // namespace werewolf
