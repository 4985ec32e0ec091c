#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace werewolf::speech {

struct SentenceChunk {
  std::uint64_t utterance = 0;
  std::size_t index = 0;
  std::string text;
  bool is_final = false;
  friend bool operator==(const SentenceChunk&, const SentenceChunk&) = default;
};

struct SegmenterOptions {
  // ASCII commas only split once the utterance is at least this many code
  // points long (counted through the comma).
  std::size_t min_chunk_chars = 24;
};

/// True for . ! ? ; : newline and the fullwidth ， 。 ！ ？. The ASCII comma is
/// a boundary only when `chars_so_far` >= options.min_chunk_chars.
bool is_boundary(char32_t cp, std::size_t chars_so_far, const SegmenterOptions& options);

std::size_t count_code_points(std::string_view utf8);

/// Incremental clause segmenter for one utterance. Tokens may split UTF-8
/// sequences anywhere. A chunk is emitted once a boundary run is followed by
/// visible text, so boundary characters (and runs like "?!") stay attached to
/// the chunk they end and the leading space goes to the next chunk. The last
/// chunk comes from finish() with is_final set.
class Segmenter {
 public:
  explicit Segmenter(std::uint64_t utterance, SegmenterOptions options = {});

  std::vector<SentenceChunk> feed(std::string_view token);
  std::vector<SentenceChunk> finish();

  std::uint64_t utterance() const noexcept { return utterance_; }

  /// Whole-stream convenience.
  static std::vector<SentenceChunk> segment(const std::vector<std::string>& tokens, std::uint64_t utterance = 0,
                                            SegmenterOptions options = {});

 private:
  void push(std::string_view bytes, char32_t cp, std::vector<SentenceChunk>& out);
  void emit(std::string text, bool is_final, std::vector<SentenceChunk>& out);

  std::uint64_t utterance_;
  SegmenterOptions options_;
  std::string partial_;
  std::string buffer_;
  std::optional<std::size_t> cut_;
  std::size_t chars_ = 0;
  std::size_t next_index_ = 0;
  bool finished_ = false;
};

}  // namespace werewolf::speech
