#include "werewolf/app/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "werewolf/core/serialize.hpp"

namespace werewolf::app {

using nlohmann::json;

std::string_view to_string(LlmBackendKind kind) noexcept {
  switch (kind) {
    case LlmBackendKind::Mock: return "mock";
    case LlmBackendKind::Malformed: return "malformed";
    case LlmBackendKind::Http: return "http";
  }
  return "mock";
}

std::string_view to_string(TtsBackendKind kind) noexcept {
  switch (kind) {
    case TtsBackendKind::None: return "none";
    case TtsBackendKind::Mock: return "mock";
    case TtsBackendKind::Failing: return "failing";
    case TtsBackendKind::Http: return "http";
  }
  return "none";
}

LlmBackendKind llm_backend_from_string(std::string_view s) {
  for (auto k : {LlmBackendKind::Mock, LlmBackendKind::Malformed, LlmBackendKind::Http}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown llm backend: " + std::string(s));
}

TtsBackendKind tts_backend_from_string(std::string_view s) {
  for (auto k : {TtsBackendKind::None, TtsBackendKind::Mock, TtsBackendKind::Failing, TtsBackendKind::Http}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown tts backend: " + std::string(s));
}

namespace {

// AgentBinding's JSON without the seat.
json kind_to_json(const agents::AgentKind& kind) {
  json j = agents::AgentBinding{PlayerId(1), kind, ""};
  j.erase("player");
  j.erase("voice_id");
  return j;
}

agents::AgentKind kind_from_json(json j) {
  j["player"] = 1;
  return j.get<agents::AgentBinding>().kind;
}

std::chrono::milliseconds ms(const json& j, const char* key, std::chrono::milliseconds fallback) {
  return std::chrono::milliseconds(j.value(key, static_cast<std::int64_t>(fallback.count())));
}

}  // namespace

AppConfig AppConfig::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  AppConfig c;
  const json empty = json::object();
  auto section = [&](const char* name) -> const json& { return j.contains(name) ? j.at(name) : empty; };

  if (j.contains("game")) {
    // Partial game sections patch the standard table.
    const auto& g = j.at("game");
    json base = GameConfig::standard(g.value("rng_seed", std::uint64_t{42}));
    base.merge_patch(g);
    c.game = base.get<GameConfig>();
  }

  const auto& a = section("agents");
  if (a.contains("default")) c.default_agent = kind_from_json(a.at("default"));
  if (a.contains("bindings")) c.bindings = a.at("bindings").get<std::vector<agents::AgentBinding>>();

  const auto& l = section("llm");
  c.llm.backend = llm_backend_from_string(l.value("backend", "mock"));
  auto& ep = c.llm.endpoint;
  ep.url = l.value("url", ep.url);
  ep.api_key = l.value("api_key", ep.api_key);
  ep.model = l.value("model", ep.model);
  ep.timeout = ms(l, "timeout_ms", ep.timeout);
  ep.connect_timeout = ms(l, "connect_timeout_ms", ep.connect_timeout);
  ep.max_retries = l.value("max_retries", ep.max_retries);
  ep.backoff = ms(l, "backoff_ms", ep.backoff);
  c.llm.agent.temperature = l.value("temperature", c.llm.agent.temperature);
  c.llm.agent.max_tokens = l.value("max_tokens", c.llm.agent.max_tokens);
  c.llm.agent.retry_budget = l.value("retry_budget", c.llm.agent.retry_budget);
  c.llm.cache_bust = l.value("cache_bust", c.llm.cache_bust);
  c.llm.mock_token_delay = std::chrono::microseconds(l.value("mock_token_delay_us", std::int64_t{0}));

  const auto& t = section("tts");
  c.tts.backend = tts_backend_from_string(t.value("backend", "none"));
  c.tts.http.url = t.value("url", c.tts.http.url);
  c.tts.http.timeout = ms(t, "timeout_ms", c.tts.http.timeout);
  c.tts.mock.chars_per_second = t.value("chars_per_second", c.tts.mock.chars_per_second);
  c.tts.mock.synth_delay = std::chrono::microseconds(t.value("synth_delay_us", std::int64_t{0}));

  if (j.contains("voices")) c.voices = speech::VoiceRegistry::from_json(j.at("voices"));

  const auto& sp = section("speech");
  c.segmenter.min_chunk_chars = sp.value("min_chunk_chars", c.segmenter.min_chunk_chars);
  c.speech_workers = sp.value("workers", c.speech_workers);
  c.fallback_chars_per_second = sp.value("fallback_chars_per_second", c.fallback_chars_per_second);
  if (c.speech_workers == 0) throw std::invalid_argument("speech.workers must be positive");

  const auto& s = section("session");
  const auto clock = s.value("clock", "logical");
  if (clock != "logical" && clock != "wall") throw std::invalid_argument("session.clock must be logical or wall");
  c.session.clock = clock == "wall" ? session::TimeSource::Wall : session::TimeSource::Logical;
  c.session.human_deadline = ms(s, "human_deadline_ms", c.session.human_deadline);
  c.session.history_char_budget = s.value("history_char_budget", c.session.history_char_budget);
  c.session.concurrent_werewolves = s.value("concurrent_werewolves", c.session.concurrent_werewolves);
  c.session.record_dir = s.value("record_dir", c.session.record_dir);

  const auto& sv = section("server");
  c.server.host = sv.value("host", c.server.host);
  c.server.port = sv.value("port", c.server.port);
  c.server.wait_for_humans = sv.value("wait_for_humans", c.server.wait_for_humans);
  if (sv.contains("tokens")) {
    for (const auto& [id, token] : sv.at("tokens").items()) {
      c.server.tokens[PlayerId(std::stoi(id))] = token.get<std::string>();
    }
  }

  c.game.validate();
  if (!c.bindings.empty()) (void)c.resolved_bindings();
  return c;
}

AppConfig AppConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

json AppConfig::to_json() const {
  json tokens = json::object();
  for (const auto& [id, token] : server.tokens) tokens[std::to_string(id.value)] = token;
  return json{
      {"game", game},
      {"agents", {{"default", kind_to_json(default_agent)}, {"bindings", bindings}}},
      {"llm",
       {{"backend", to_string(llm.backend)},
        {"url", llm.endpoint.url},
        {"model", llm.endpoint.model},
        {"timeout_ms", llm.endpoint.timeout.count()},
        {"connect_timeout_ms", llm.endpoint.connect_timeout.count()},
        {"max_retries", llm.endpoint.max_retries},
        {"backoff_ms", llm.endpoint.backoff.count()},
        {"temperature", llm.agent.temperature},
        {"max_tokens", llm.agent.max_tokens},
        {"retry_budget", llm.agent.retry_budget},
        {"cache_bust", llm.cache_bust},
        {"mock_token_delay_us", llm.mock_token_delay.count()}}},  // the api key is never written back
      {"tts",
       {{"backend", to_string(tts.backend)},
        {"url", tts.http.url},
        {"timeout_ms", tts.http.timeout.count()},
        {"chars_per_second", tts.mock.chars_per_second},
        {"synth_delay_us", tts.mock.synth_delay.count()}}},
      {"voices", voices.profiles()},
      {"speech",
       {{"min_chunk_chars", segmenter.min_chunk_chars},
        {"workers", speech_workers},
        {"fallback_chars_per_second", fallback_chars_per_second}}},
      {"session",
       {{"clock", session.clock == session::TimeSource::Wall ? "wall" : "logical"},
        {"human_deadline_ms", session.human_deadline.count()},
        {"history_char_budget", session.history_char_budget},
        {"concurrent_werewolves", session.concurrent_werewolves},
        {"record_dir", session.record_dir}}},
      {"server",
       {{"host", server.host},
        {"port", server.port},
        {"tokens", tokens},
        {"wait_for_humans", server.wait_for_humans}}},
  };
}

AppConfig AppConfig::with_env() const {
  AppConfig c = *this;
  c.llm.endpoint = c.llm.endpoint.with_env();
  c.tts.http = c.tts.http.with_env();
  return c;
}

std::vector<agents::AgentBinding> AppConfig::resolved_bindings() const {
  const auto n = static_cast<std::size_t>(game.player_count());
  std::vector<std::optional<agents::AgentBinding>> seats(n);
  for (const auto& b : bindings) {
    if (b.player.value < 1 || static_cast<std::size_t>(b.player.value) > n) {
      throw std::invalid_argument("binding for unknown player " + std::to_string(b.player.value));
    }
    if (seats[b.player.index()]) throw std::invalid_argument("duplicate binding for player " + std::to_string(b.player.value));
    seats[b.player.index()] = b;
  }
  std::vector<agents::AgentBinding> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(seats[i] ? *seats[i] : agents::AgentBinding{PlayerId::from_index(i), default_agent, ""});
    if (!out.back().voice_id.empty() && !voices.contains(out.back().voice_id)) {
      throw std::invalid_argument("unknown voice " + out.back().voice_id);
    }
  }
  return out;
}

session::SessionOptions AppConfig::session_options() const {
  session::SessionOptions o;
  o.prompt.history_char_budget = session.history_char_budget;
  o.time = session.clock;
  o.human_deadline = session.human_deadline;
  o.segmenter = segmenter;
  o.pipeline.workers = speech_workers;
  o.pipeline.fallback_chars_per_second = fallback_chars_per_second;
  o.concurrent_werewolves = session.concurrent_werewolves;
  return o;
}

}  // namespace werewolf::app
