#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "werewolf/app/config.hpp"
#include "werewolf/app/runtime.hpp"

using namespace werewolf;
using namespace werewolf::app;
using nlohmann::json;

TEST(AppConfig, EmptyObjectGivesDefaults) {
  const auto c = AppConfig::from_json(json::object());
  EXPECT_EQ(c.game, GameConfig::standard(42));
  EXPECT_EQ(c.llm.backend, LlmBackendKind::Mock);
  EXPECT_EQ(c.tts.backend, TtsBackendKind::None);
  EXPECT_TRUE(c.llm.cache_bust);
  EXPECT_EQ(c.speech_workers, 2u);
  EXPECT_EQ(c.resolved_bindings().size(), 6u);
}

TEST(AppConfig, PartialGamePatchesTheStandardTable) {
  const auto c = AppConfig::from_json(json::parse(R"({"game": {"rng_seed": 9, "max_rounds": 4}})"));
  EXPECT_EQ(c.game.rng_seed, 9u);
  EXPECT_EQ(c.game.max_rounds, 4);
  EXPECT_EQ(c.game.player_names, GameConfig::standard(9).player_names);
}

TEST(AppConfig, RoundTripsThroughJson) {
  const auto c = AppConfig::from_json(json::parse(R"({
    "game": {"rng_seed": 3},
    "agents": {"default": {"kind": "llm", "model": "m1"},
               "bindings": [{"player": 2, "kind": "human", "voice_id": "tenor"}]},
    "llm": {"backend": "malformed", "timeout_ms": 1500, "retry_budget": 1, "cache_bust": false},
    "tts": {"backend": "failing", "chars_per_second": 30},
    "speech": {"min_chunk_chars": 10, "workers": 3},
    "session": {"clock": "wall", "human_deadline_ms": 5000, "record_dir": "recs"},
    "server": {"port": 0, "tokens": {"2": "abc"}, "wait_for_humans": false}
  })"));
  const auto back = AppConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(back.llm.backend, LlmBackendKind::Malformed);
  EXPECT_EQ(back.llm.endpoint.timeout.count(), 1500);
  EXPECT_EQ(back.llm.agent.retry_budget, 1);
  EXPECT_EQ(back.tts.backend, TtsBackendKind::Failing);
  EXPECT_EQ(back.segmenter.min_chunk_chars, 10u);
  EXPECT_EQ(back.session.clock, session::TimeSource::Wall);
  EXPECT_EQ(back.server.tokens.at(PlayerId(2)), "abc");

  const auto b = back.resolved_bindings();
  ASSERT_EQ(b.size(), 6u);
  EXPECT_TRUE(std::holds_alternative<agents::HumanBinding>(b[1].kind));
  EXPECT_EQ(b[1].voice_id, "tenor");
  EXPECT_EQ(std::get<agents::LlmBinding>(b[0].kind).model, "m1");
}

TEST(AppConfig, ApiKeyIsNeverWrittenBack) {
  const auto c = AppConfig::from_json(json::parse(R"({"llm": {"api_key": "sk-secret"}})"));
  EXPECT_EQ(c.llm.endpoint.api_key, "sk-secret");
  EXPECT_EQ(c.to_json().dump().find("sk-secret"), std::string::npos);
}

TEST(AppConfig, RejectsBadInput) {
  EXPECT_THROW(AppConfig::from_json(json::array()), std::invalid_argument);
  EXPECT_THROW(AppConfig::from_json(json::parse(R"({"llm": {"backend": "carrier-pigeon"}})")), std::invalid_argument);
  EXPECT_THROW(AppConfig::from_json(json::parse(R"({"tts": {"backend": "x"}})")), std::invalid_argument);
  EXPECT_THROW(AppConfig::from_json(json::parse(R"({"session": {"clock": "sundial"}})")), std::invalid_argument);
  EXPECT_THROW(AppConfig::from_json(json::parse(R"({"speech": {"workers": 0}})")), std::invalid_argument);
  EXPECT_THROW(AppConfig::from_json(json::parse(R"({"agents": {"bindings": [{"player": 9, "kind": "human"}]}})")),
               std::invalid_argument);
  EXPECT_THROW(AppConfig::from_json(json::parse(R"({"agents": {"bindings": [{"player": 1, "kind": "human"},
                                                                          {"player": 1, "kind": "human"}]}})")),
               std::invalid_argument);
  EXPECT_THROW(AppConfig::from_json(json::parse(R"({"agents": {"bindings": [{"player": 1, "kind": "human",
                                                                           "voice_id": "kazoo"}]}})")),
               std::invalid_argument);
  EXPECT_ANY_THROW(AppConfig::from_json(json::parse(R"({"game": {"role_distribution": {"Werewolf": 5}}})")));
}

TEST(AppConfig, LoadReportsThePath) {
  const auto path = std::filesystem::temp_directory_path() / "werewolf_bad_config.json";
  std::ofstream(path) << "{ nope";
  try {
    AppConfig::load(path);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("werewolf_bad_config.json"), std::string::npos);
  }
  std::filesystem::remove(path);
  EXPECT_THROW(AppConfig::load("/nonexistent/config.json"), std::runtime_error);
}

TEST(AppConfig, EnvironmentOverridesEndpoints) {
  ::setenv("WEREWOLF_LLM_URL", "http://example.test/v1/chat/completions", 1);
  ::setenv("WEREWOLF_TTS_URL", "http://tts.test:1234", 1);
  const auto c = AppConfig{}.with_env();
  ::unsetenv("WEREWOLF_LLM_URL");
  ::unsetenv("WEREWOLF_TTS_URL");
  EXPECT_EQ(c.llm.endpoint.url, "http://example.test/v1/chat/completions");
  EXPECT_EQ(c.tts.http.url, "http://tts.test:1234");
}

TEST(Runtime, RunGameSavesAReplayableRecord) {
  AppConfig c;
  c.tts.backend = TtsBackendKind::Mock;
  c.tts.mock.chars_per_second = 4000;
  c.default_agent = agents::LlmBinding{};
  c.session.record_dir = (std::filesystem::temp_directory_path() / "werewolf_runtime_test").string();
  std::filesystem::remove_all(c.session.record_dir);
  const auto run = run_game(c, 17);
  EXPECT_TRUE(run.replay_ok);
  ASSERT_TRUE(run.record.outcome);
  const auto saved = session::load(std::filesystem::path(c.session.record_dir) / "game-17.jsonl");
  EXPECT_EQ(saved, run.record);
  EXPECT_EQ(saved.config.rng_seed, 17u);
  std::filesystem::remove_all(c.session.record_dir);

  const auto summary = summarize({run, run});
  EXPECT_EQ(summary["games"], 2);
  EXPECT_EQ(summary["replay_failures"], 0);
  EXPECT_EQ(summary["rounds"]["min"], run.final_round);
  int wins = 0;
  for (const auto& [k, v] : summary["wins"].items()) wins += v.get<int>();
  EXPECT_EQ(wins, 2);
}

TEST(Runtime, TranscriptShowsOnlyPublicEventsByDefault) {
  AppConfig c;
  const auto run = run_game(c, 4);
  const auto pub = render_transcript(run.record);
  const auto all = render_transcript(run.record, true);
  EXPECT_NE(pub.find("Outcome: "), std::string::npos);
  EXPECT_EQ(pub.find(" is a "), std::string::npos);  // role cards are private
  EXPECT_NE(all.find(" is a "), std::string::npos);
  EXPECT_NE(all.find("[to P1]"), std::string::npos);
}

TEST(Runtime, ResynthesizeReplaysChunksInOrder) {
  AppConfig c;
  c.default_agent = agents::LlmBinding{};
  const auto run = run_game(c, 6);
  std::size_t chunks = 0;
  for (const auto& e : run.record.events) chunks += std::holds_alternative<StatementChunk>(e.payload);
  const auto metrics = resynthesize(run.record, std::make_shared<speech::MockTtsBackend>(speech::MockTtsOptions{4000.0}),
                                    nullptr, c);
  std::size_t played = 0;
  for (const auto& m : metrics) {
    played += m.playback.size();
    EXPECT_TRUE(m.degradations.empty());
  }
  EXPECT_EQ(played, chunks);
}
