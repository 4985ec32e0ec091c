#pragma once

// Random token streams for segmentation tests: mixed ASCII, multibyte text
// and punctuation, split at arbitrary byte offsets (including inside UTF-8
// sequences), with occasional empty tokens.

#include <random>
#include <string>
#include <vector>

namespace werewolf::testing {

inline std::string random_utterance(std::mt19937_64& rng) {
  static const std::vector<std::string> words = {"I", "suspect", "P3", "he", "voted", "oddly", "wolf", "village",
                                                 "我们", "投票", "狼人", "é", "naïve", "ß", "🐺", "x"};
  static const std::vector<std::string> marks = {".", ",", "!", "?", ";", ":", "\n", "，", "。", "！", "？",
                                                 "...", "?!", " ", "  ", "\t", "\r\n", "-", "'", "\"", "，，"};
  std::uniform_int_distribution<int> kind(0, 9);
  const int style = std::uniform_int_distribution<int>(0, 9)(rng);
  if (style == 0) return "";
  const int n = std::uniform_int_distribution<int>(1, 60)(rng);
  std::string out;
  for (int i = 0; i < n; ++i) {
    const int k = kind(rng);
    if (style == 1 || k < 5) {
      // boundary-free style sticks to words and single spaces
      out += words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];
      if (style == 1 || k < 3) out += " ";
    } else {
      out += marks[std::uniform_int_distribution<std::size_t>(0, marks.size() - 1)(rng)];
    }
  }
  return out;
}

inline std::vector<std::string> random_split(const std::string& text, std::mt19937_64& rng) {
  std::vector<std::string> tokens;
  std::size_t at = 0;
  while (at < text.size()) {
    if (std::uniform_int_distribution<int>(0, 15)(rng) == 0) tokens.emplace_back();
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 7)(rng);
    tokens.push_back(text.substr(at, len));
    at += len;
  }
  if (std::uniform_int_distribution<int>(0, 7)(rng) == 0) tokens.emplace_back();
  return tokens;
}

}  // namespace werewolf::testing
