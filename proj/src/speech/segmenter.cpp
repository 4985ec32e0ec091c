#include "werewolf/speech/segmenter.hpp"

#include <stdexcept>

namespace werewolf::speech {
namespace {

constexpr char32_t kInvalid = 0xFFFD;

bool is_continuation(unsigned char b) { return (b & 0xC0) == 0x80; }

std::size_t sequence_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return 2;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return 4;
  return 0;
}

bool is_space(char32_t cp) { return cp == ' ' || cp == '\t' || cp == '\r' || cp == '\f' || cp == '\v'; }

// Decodes complete code points from data, calling fn(bytes, cp). Returns the
// number of bytes consumed; a trailing incomplete sequence is left over.
template <typename Fn>
std::size_t decode(std::string_view data, Fn&& fn) {
  std::size_t i = 0;
  while (i < data.size()) {
    const auto lead = static_cast<unsigned char>(data[i]);
    std::size_t len = sequence_length(lead);
    if (len == 0) {
      fn(data.substr(i, 1), kInvalid);
      ++i;
      continue;
    }
    if (i + len > data.size()) {
      bool prefix = true;
      for (std::size_t k = i + 1; k < data.size(); ++k) prefix &= is_continuation(static_cast<unsigned char>(data[k]));
      if (prefix) break;
    }
    bool valid = i + len <= data.size();
    char32_t cp = len == 1 ? lead : (lead & (0x7F >> len));
    for (std::size_t k = 1; valid && k < len; ++k) {
      const auto b = static_cast<unsigned char>(data[i + k]);
      valid = is_continuation(b);
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!valid) {
      fn(data.substr(i, 1), kInvalid);
      ++i;
      continue;
    }
    fn(data.substr(i, len), cp);
    i += len;
  }
  return i;
}

}  // namespace

bool is_boundary(char32_t cp, std::size_t chars_so_far, const SegmenterOptions& options) {
  switch (cp) {
    case U'.':
    case U'!':
    case U'?':
    case U';':
    case U':':
    case U'\n':
    case U'，':
    case U'。':
    case U'！':
    case U'？':
      return true;
    case U',':
      return chars_so_far >= options.min_chunk_chars;
    default:
      return false;
  }
}

std::size_t count_code_points(std::string_view utf8) {
  std::size_t n = 0;
  const std::size_t used = decode(utf8, [&](std::string_view, char32_t) { ++n; });
  return n + (utf8.size() - used);
}

Segmenter::Segmenter(std::uint64_t utterance, SegmenterOptions options)
    : utterance_(utterance), options_(options) {}

std::vector<SentenceChunk> Segmenter::feed(std::string_view token) {
  if (finished_) throw std::logic_error("segmenter already finished");
  std::vector<SentenceChunk> out;
  partial_.append(token);
  const std::size_t used = decode(partial_, [&](std::string_view bytes, char32_t cp) { push(bytes, cp, out); });
  partial_.erase(0, used);
  return out;
}

std::vector<SentenceChunk> Segmenter::finish() {
  if (finished_) return {};
  finished_ = true;
  std::vector<SentenceChunk> out;
  buffer_ += partial_;  // a dangling partial sequence is kept byte-for-byte
  partial_.clear();
  if (!buffer_.empty()) emit(std::move(buffer_), true, out);
  buffer_.clear();
  return out;
}

void Segmenter::push(std::string_view bytes, char32_t cp, std::vector<SentenceChunk>& out) {
  ++chars_;
  const bool boundary = is_boundary(cp, chars_, options_);
  if (cut_ && !boundary && !is_space(cp)) {
    emit(buffer_.substr(0, *cut_), false, out);
    buffer_.erase(0, *cut_);
    cut_.reset();
  }
  buffer_.append(bytes);
  if (boundary) cut_ = buffer_.size();
}

void Segmenter::emit(std::string text, bool is_final, std::vector<SentenceChunk>& out) {
  out.push_back(SentenceChunk{utterance_, next_index_++, std::move(text), is_final});
}

std::vector<SentenceChunk> Segmenter::segment(const std::vector<std::string>& tokens, std::uint64_t utterance,
                                              SegmenterOptions options) {
  Segmenter s(utterance, options);
  std::vector<SentenceChunk> out;
  for (const auto& t : tokens) {
    auto chunks = s.feed(t);
    out.insert(out.end(), chunks.begin(), chunks.end());
  }
  auto tail = s.finish();
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace werewolf::speech
