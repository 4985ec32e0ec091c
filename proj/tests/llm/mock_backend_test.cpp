#include <gtest/gtest.h>

#include <random>

#include "werewolf/llm/mock_backend.hpp"

namespace werewolf::llm {
namespace {

std::vector<TokenEvent> drain(ChatBackend& backend, const ChatRequest& request = {}) {
  std::vector<TokenEvent> events;
  backend.stream_chat(request, [&](const TokenEvent& e) { events.push_back(e); });
  return events;
}

TEST(MockChatBackend, ScriptedReplyStreamsWordTokens) {
  MockChatBackend backend(MockChatBackend::scripted({"Hello. World."}));
  const auto events = drain(backend);
  ASSERT_EQ(events.size(), 3u);
  EXPECT_EQ(std::get<Token>(events[0]).text, "Hello.");
  EXPECT_EQ(std::get<Token>(events[1]).text, " World.");
  EXPECT_EQ(std::get<Done>(events[2]).finish_reason, "stop");
}

TEST(MockChatBackend, ScriptCycles) {
  MockChatBackend backend(MockChatBackend::scripted({"a", "b"}));
  EXPECT_EQ(backend.complete({}).text, "a");
  EXPECT_EQ(backend.complete({}).text, "b");
  EXPECT_EQ(backend.complete({}).text, "a");
  EXPECT_EQ(backend.calls(), 3u);
}

TEST(MockChatBackend, EmptyReplyIsJustDone) {
  MockChatBackend backend(MockChatBackend::scripted({""}));
  const auto events = drain(backend);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<Done>(events[0]));
}

std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {"a", "b", " ", "  ", ".", ",", "\n", "é", "你好", "？", "P3", "!"};
  std::string out;
  const auto n = std::uniform_int_distribution<int>(0, 40)(rng);
  for (int i = 0; i < n; ++i) out += pieces[std::uniform_int_distribution<std::size_t>(0, pieces.size() - 1)(rng)];
  return out;
}

// Streaming and non-streaming runs of the same script agree, and every
// stream is Token* followed by exactly one terminal event.
TEST(MockChatBackend, StreamingMatchesCompletionAndIsWellFormed) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const std::string text = random_text(rng);
    MockChatBackend streaming(MockChatBackend::scripted({text}));
    MockChatBackend plain(MockChatBackend::scripted({text}));
    const auto events = drain(streaming);
    ASSERT_FALSE(events.empty());
    std::string joined;
    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
      const auto* token = std::get_if<Token>(&events[k]);
      ASSERT_NE(token, nullptr);
      EXPECT_FALSE(token->text.empty());
      joined += token->text;
    }
    EXPECT_TRUE(std::holds_alternative<Done>(events.back()));
    EXPECT_EQ(joined, text);
    EXPECT_EQ(plain.complete({}).text, joined);
  }
}

TEST(MockChatBackend, FailureAfterSomeTokens) {
  MockChatBackend::Options options;
  options.fail = StreamErrorCause::ConnectionFailure;
  options.fail_after_tokens = 1;
  MockChatBackend backend(MockChatBackend::scripted({"one two three"}), options);
  const auto events = drain(backend);
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(std::get<Token>(events[0]).text, "one");
  EXPECT_EQ(std::get<StreamError>(events[1]).cause, StreamErrorCause::ConnectionFailure);
  EXPECT_TRUE(backend.complete({}).error.has_value());
}

TEST(MockChatBackend, InterTokenDelayIsApplied) {
  using namespace std::chrono;
  MockChatBackend backend(MockChatBackend::scripted({"a b c d"}), milliseconds(10));
  std::vector<Clock::time_point> arrivals;
  const auto start = Clock::now();
  backend.stream_chat({}, [&](const TokenEvent& e) {
    if (const auto* t = std::get_if<Token>(&e)) arrivals.push_back(t->arrival);
  });
  ASSERT_EQ(arrivals.size(), 4u);
  EXPECT_GE(arrivals[0] - start, milliseconds(10));
  for (std::size_t i = 1; i < arrivals.size(); ++i) EXPECT_GE(arrivals[i] - arrivals[i - 1], milliseconds(10));
}

TEST(MockChatBackend, RecordsRequests) {
  MockChatBackend backend([](const ChatRequest& r) { return r.messages.back().content; });
  ChatRequest r;
  r.messages = {{"user", "echo me"}};
  EXPECT_EQ(backend.complete(r).text, "echo me");
  EXPECT_EQ(backend.requests().at(0).messages.back().content, "echo me");
}

}  // namespace
}  // namespace werewolf::llm
