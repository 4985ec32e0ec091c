#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "werewolf/app/config.hpp"
#include "werewolf/app/runtime.hpp"
#include "werewolf/llm/mock_backend.hpp"
#include "werewolf/llm/mock_server.hpp"
#include "werewolf/session/hub.hpp"
#include "werewolf/session/ws_server.hpp"

using namespace werewolf;
using nlohmann::json;

namespace {

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted = true; }

void wait_for_interrupt() {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
}

// Flags that mirror config keys. Unset flags leave the config alone.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> max_rounds;
  std::optional<std::string> agents;  // scripted | llm
  std::optional<std::string> policy;
  std::optional<std::string> llm;
  std::optional<std::string> llm_url;
  std::optional<std::string> model;
  std::optional<std::string> tts;
  std::optional<std::string> tts_url;
  std::optional<std::string> records;
  bool no_cache_bust = false;

  void add_to(CLI::App& app) {
    app.add_option("--seed", seed, "Game seed");
    app.add_option("--max-rounds", max_rounds, "Round limit");
    app.add_option("--agents", agents, "Default agent kind")->check(CLI::IsMember({"scripted", "llm"}));
    app.add_option("--policy", policy, "Scripted policy")
        ->check(CLI::IsMember({"lowest-id-target", "random-seeded", "always-pass"}));
    app.add_option("--llm", llm, "LLM backend")->check(CLI::IsMember({"mock", "malformed", "http"}));
    app.add_option("--llm-url", llm_url, "Chat-completions endpoint URL");
    app.add_option("--model", model, "Model id");
    app.add_option("--tts", tts, "TTS backend")->check(CLI::IsMember({"none", "mock", "failing", "http"}));
    app.add_option("--tts-url", tts_url, "TTS server base URL");
    app.add_option("--records", records, "Directory for JSONL session records");
    app.add_flag("--no-cache-bust", no_cache_bust, "Send prompts without the nonce tag");
  }

  void apply(app::AppConfig& c) const {
    if (seed) c.game.rng_seed = *seed;
    if (max_rounds) c.game.max_rounds = *max_rounds;
    if (agents == "llm") c.default_agent = agents::LlmBinding{};
    if (agents == "scripted" || (policy && !agents)) c.default_agent = agents::ScriptedBinding{};
    if (policy) {
      if (auto* s = std::get_if<agents::ScriptedBinding>(&c.default_agent)) {
        s->policy = *agents::scripted_policy_from_string(*policy);
      }
    }
    if (llm) c.llm.backend = app::llm_backend_from_string(*llm);
    if (llm_url) c.llm.endpoint.url = *llm_url;
    if (model) c.llm.endpoint.model = *model;
    if (tts) c.tts.backend = app::tts_backend_from_string(*tts);
    if (tts_url) c.tts.http.url = *tts_url;
    if (records) c.session.record_dir = *records;
    if (no_cache_bust) c.llm.cache_bust = false;
  }
};

app::AppConfig load_config(const std::string& path, const Overrides& overrides) {
  app::AppConfig c = path.empty() ? app::AppConfig{} : app::AppConfig::load(path);
  c = c.with_env();
  overrides.apply(c);
  c.game.validate();
  return c;
}

void print_json(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << j.dump(2) << "\n";
}

int cmd_sim(const app::AppConfig& config, int games, const std::string& out_path, bool transcript) {
  std::vector<app::GameRun> runs;
  for (int i = 0; i < games; ++i) {
    runs.push_back(app::run_game(config, config.game.rng_seed + static_cast<std::uint64_t>(i)));
    if (transcript) std::cerr << app::render_transcript(runs.back().record) << "\n";
  }
  const json summary = app::summarize(runs);
  print_json(summary, out_path);
  return summary["replay_failures"].get<std::size_t>() == 0 ? 0 : 1;
}

int cmd_play(app::AppConfig config, const std::vector<int>& humans, const std::vector<std::string>& tokens) {
  std::map<PlayerId, std::shared_ptr<agents::HumanSeat>> seats;
  for (int id : humans) {
    if (id < 1 || id > config.game.player_count()) throw std::invalid_argument("no seat " + std::to_string(id));
    seats[PlayerId(id)] = std::make_shared<agents::HumanSeat>();
    std::erase_if(config.bindings, [&](const auto& b) { return b.player == PlayerId(id); });
    config.bindings.push_back({PlayerId(id), agents::HumanBinding{}, ""});
  }
  for (const auto& t : tokens) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("tokens look like <player>=<token>");
    config.server.tokens[PlayerId(std::stoi(t.substr(0, eq)))] = t.substr(eq + 1);
  }
  if (config.session.clock == session::TimeSource::Logical) config.session.clock = session::TimeSource::Wall;

  session::SessionHub hub(seats, config.server.tokens);
  session::WsServer server(hub);
  const int port = server.start(config.server.host, config.server.port);
  std::cerr << "serving ws://" << config.server.host << ":" << port << "/\n";

  if (config.server.wait_for_humans && !seats.empty()) {
    std::cerr << "waiting for " << seats.size() << " human player(s) to join\n";
    std::signal(SIGINT, on_signal);
    while (hub.connected_players() < seats.size()) {
      if (g_interrupted) return 130;
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
  }

  app::RunHooks hooks;
  hooks.seats = seats;
  hooks.listeners.push_back([&hub](const session::SessionEvent& e) { hub.publish(e); });
  if (config.tts.backend != app::TtsBackendKind::None) {
    hooks.sink = std::make_shared<speech::RealtimeSink>([&hub](const speech::AudioClip& clip) { hub.publish_audio(clip); });
  }
  const auto run = app::run_game(config, config.game.rng_seed, std::move(hooks));
  std::cout << app::summarize({run}).dump(2) << "\n";
  // Give clients a moment to drain the final frames.
  std::this_thread::sleep_for(std::chrono::milliseconds(500));
  server.stop();
  return run.replay_ok ? 0 : 1;
}

int cmd_replay(const app::AppConfig& config, const std::string& path, bool all, bool resynth,
               const std::string& wav_dir) {
  const auto record = session::load(path);
  std::cout << app::render_transcript(record, all);
  const auto rep = session::replay(record);
  if (!rep.ok) {
    std::cerr << "replay mismatch: " << rep.error << "\n";
    return 1;
  }
  std::cerr << "replay ok: " << rep.engine_events_checked << " engine events, digest " << rep.final_digest << "\n";
  if (resynth) {
    auto tts = app::make_tts(config);
    if (!tts) tts = std::make_shared<speech::MockTtsBackend>(config.tts.mock);
    std::shared_ptr<speech::AudioSink> sink;
    if (!wav_dir.empty()) {
      std::filesystem::create_directories(wav_dir);
      sink = std::make_shared<speech::WavDirectorySink>(wav_dir);
    }
    json out = json::array();
    for (const auto& m : app::resynthesize(record, tts, sink, config)) out.push_back(speech::to_json(m));
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_voices(const app::AppConfig& config, bool probe) {
  json out = json::array();
  auto tts = probe ? app::make_tts(config) : nullptr;
  if (probe && !tts) throw std::runtime_error("no TTS backend configured (use --tts)");
  const bool healthy = tts ? tts->health() : false;
  int status = 0;
  for (const auto& v : config.voices.profiles()) {
    json item = v;
    if (tts) {
      const auto r = speech::synthesize(*tts, speech::SentenceChunk{0, 0, "Good morning, village.", true}, v,
                                        config.fallback_chars_per_second);
      item["probe"] = {{"ok", !r.degradation}, {"seconds", r.clip.duration()}, {"synth_seconds", r.synth_seconds}};
      if (r.degradation) {
        item["probe"]["error"] = *r.degradation;
        status = 1;
      }
    }
    out.push_back(std::move(item));
  }
  if (tts) out = json{{"healthy", healthy}, {"voices", out}};
  std::cout << out.dump(2) << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Werewolf game engine with LLM players and streamed speech"};
  cli.require_subcommand(1);
  std::string config_path;
  cli.add_option("-c,--config", config_path, "JSON config file")->check(CLI::ExistingFile);

  Overrides overrides;

  auto* sim = cli.add_subcommand("sim", "Run headless games and print outcome statistics");
  int games = 1;
  std::string sim_out;
  bool sim_transcript = false;
  sim->add_option("-n,--games", games, "Number of games (seeds increase from --seed)")->check(CLI::PositiveNumber);
  sim->add_option("-o,--out", sim_out, "Write the statistics JSON here instead of stdout");
  sim->add_flag("--transcript", sim_transcript, "Print each game's public transcript to stderr");
  overrides.add_to(*sim);

  auto* play = cli.add_subcommand("play", "Serve a game over WebSocket with human seats");
  std::vector<int> humans;
  std::vector<std::string> tokens;
  std::optional<std::string> host;
  std::optional<int> port;
  bool no_wait = false;
  play->add_option("--human", humans, "Seat played by a human (repeatable)");
  play->add_option("--token", tokens, "Join token as <player>=<token> (repeatable)");
  play->add_option("--host", host, "Bind address");
  play->add_option("--port", port, "Port (0 picks one)");
  play->add_flag("--no-wait", no_wait, "Start without waiting for human seats to join");
  overrides.add_to(*play);

  auto* rep = cli.add_subcommand("replay", "Check a session record and print its transcript");
  std::string record_path, wav_dir;
  bool show_all = false, resynth = false;
  rep->add_option("record", record_path, "JSONL session record")->required()->check(CLI::ExistingFile);
  rep->add_flag("--all", show_all, "Include private and system events");
  rep->add_flag("--resynthesize", resynth, "Synthesize the statements again and print speech metrics");
  rep->add_option("--wav-dir", wav_dir, "Write resynthesized clips here");
  overrides.add_to(*rep);

  auto* voices = cli.add_subcommand("voices", "List voice profiles");
  bool probe = false;
  voices->add_flag("--probe", probe, "Synthesize a test phrase with every voice");
  overrides.add_to(*voices);

  auto* mock_llm = cli.add_subcommand("mock-llm", "Serve the mock chat backend over HTTP");
  std::string mock_host = "127.0.0.1";
  int mock_port = 8000;
  std::uint64_t mock_seed = 1;
  int token_delay_ms = 0;
  bool mock_malformed = false;
  mock_llm->add_option("--host", mock_host);
  mock_llm->add_option("--port", mock_port);
  mock_llm->add_option("--seed", mock_seed);
  mock_llm->add_option("--token-delay-ms", token_delay_ms);
  mock_llm->add_flag("--malformed", mock_malformed, "Never answer with a usable action");

  auto* mock_tts = cli.add_subcommand("mock-tts", "Serve the mock TTS backend over HTTP");
  int tts_port = 9880;
  double cps = 12.0;
  int synth_delay_ms = 0;
  bool tts_fail = false;
  mock_tts->add_option("--host", mock_host);
  mock_tts->add_option("--port", tts_port);
  mock_tts->add_option("--chars-per-second", cps);
  mock_tts->add_option("--synth-delay-ms", synth_delay_ms);
  mock_tts->add_flag("--fail", tts_fail, "Fail every request");

  auto* show = cli.add_subcommand("config", "Print the effective configuration");
  overrides.add_to(*show);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_sim(load_config(config_path, overrides), games, sim_out, sim_transcript);
    if (play->parsed()) {
      auto config = load_config(config_path, overrides);
      if (host) config.server.host = *host;
      if (port) config.server.port = *port;
      if (no_wait) config.server.wait_for_humans = false;
      return cmd_play(std::move(config), humans, tokens);
    }
    if (rep->parsed()) return cmd_replay(load_config(config_path, overrides), record_path, show_all, resynth, wav_dir);
    if (voices->parsed()) return cmd_voices(load_config(config_path, overrides), probe);
    if (show->parsed()) {
      std::cout << load_config(config_path, overrides).to_json().dump(2) << "\n";
      return 0;
    }
    if (mock_llm->parsed()) {
      auto responder = mock_malformed ? agents::malformed_responder() : agents::mock_player_responder(mock_seed);
      auto backend = std::make_shared<llm::MockChatBackend>(
          responder, std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::milliseconds(token_delay_ms)));
      llm::ChatServer server(backend);
      const int bound = server.start(mock_host, mock_port);
      std::cerr << "mock chat completions on http://" << mock_host << ":" << bound << "/v1/chat/completions\n";
      wait_for_interrupt();
      server.stop();
      return 0;
    }
    if (mock_tts->parsed()) {
      speech::MockTtsOptions options;
      options.chars_per_second = cps;
      options.synth_delay = std::chrono::milliseconds(synth_delay_ms);
      options.fail = tts_fail;
      speech::TtsServer server(std::make_shared<speech::MockTtsBackend>(options));
      const int bound = server.start(mock_host, tts_port);
      std::cerr << "mock TTS on http://" << mock_host << ":" << bound << "/tts\n";
      wait_for_interrupt();
      server.stop();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
