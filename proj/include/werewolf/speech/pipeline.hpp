#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "werewolf/speech/audio.hpp"
#include "werewolf/speech/segmenter.hpp"
#include "werewolf/speech/tts.hpp"
#include "werewolf/speech/voices.hpp"

namespace werewolf::speech {

using Clock = std::chrono::steady_clock;

/// Where finished clips go. play() returns once the clip has been played.
class AudioSink {
 public:
  virtual ~AudioSink() = default;
  virtual void play(const AudioClip& clip) = 0;
};

/// Discards audio immediately (headless runs).
class NullSink final : public AudioSink {
 public:
  void play(const AudioClip&) override {}
};

/// Hands the clip to `forward` (e.g. a network frame) and then waits for the
/// clip's duration, pacing playback like a sound device would.
class RealtimeSink final : public AudioSink {
 public:
  explicit RealtimeSink(std::function<void(const AudioClip&)> forward = {}) : forward_(std::move(forward)) {}
  void play(const AudioClip& clip) override;

 private:
  std::function<void(const AudioClip&)> forward_;
};

/// Writes u<utterance>_c<index>.wav files into a directory.
class WavDirectorySink final : public AudioSink {
 public:
  explicit WavDirectorySink(std::filesystem::path dir);
  void play(const AudioClip& clip) override;

 private:
  std::filesystem::path dir_;
};

struct SynthResult {
  AudioClip clip;
  std::optional<std::string> degradation;  // "backend-timeout: ..." or "backend-error: ..."
  double synth_seconds = 0.0;
};

/// Calls the backend and converts to the canonical format. Failures never
/// propagate: the clip becomes silence of the estimated duration.
SynthResult synthesize(TtsBackend& backend, const SentenceChunk& chunk, const VoiceProfile& voice,
                       double fallback_chars_per_second = 12.0);

struct PlaybackEvent {
  std::uint64_t utterance = 0;
  std::size_t index = 0;
  Clock::time_point start{};
  Clock::time_point end{};
};

struct ChunkDegradation {
  std::size_t index = 0;
  std::string cause;
};

struct UtteranceMetrics {
  std::uint64_t utterance = 0;
  std::string voice_id;
  Clock::time_point stream_start{};
  double first_audio_latency = 0.0;  // stream start to first sample
  std::vector<double> inter_chunk_gaps;  // start_k - end_{k-1}, k >= 1
  std::vector<double> synth_times;
  std::vector<double> playback_times;
  std::vector<PlaybackEvent> playback;
  std::vector<ChunkDegradation> degradations;  // sorted by index
};

/// Seconds, relative to the stream start where a time point is involved.
nlohmann::json to_json(const UtteranceMetrics& metrics);

struct PipelineOptions {
  std::size_t workers = 2;
  double fallback_chars_per_second = 12.0;
  /// Called on the emitter thread right before a clip is handed to the sink.
  std::function<void(const PlaybackEvent&)> on_playback_start;
};

/// Three stages: the caller segments and submits chunks, a worker pool
/// synthesizes them in submission order, and one emitter plays clips in
/// strict (utterance, index) order. An utterance only starts after the
/// previous one has finished.
class SpeechPipeline {
 public:
  SpeechPipeline(std::shared_ptr<TtsBackend> backend, VoiceRegistry voices, std::shared_ptr<AudioSink> sink,
                 PipelineOptions options = {});
  ~SpeechPipeline();
  SpeechPipeline(const SpeechPipeline&) = delete;
  SpeechPipeline& operator=(const SpeechPipeline&) = delete;

  /// Registers the next utterance. Ids must increase; unknown voices throw
  /// std::invalid_argument.
  void open(std::uint64_t utterance, const std::string& voice_id, Clock::time_point stream_start = Clock::now());
  /// Chunks of an utterance must arrive with dense indices.
  void submit(const SentenceChunk& chunk);
  /// No more chunks for this utterance (needed when it has none at all).
  void close(std::uint64_t utterance);
  /// Blocks until the utterance has been played out.
  UtteranceMetrics wait(std::uint64_t utterance);

  const VoiceRegistry& voices() const noexcept { return voices_; }

 private:
  struct Job {
    SentenceChunk chunk;
    VoiceProfile voice;
  };
  struct Utterance {
    VoiceProfile voice;
    std::size_t submitted = 0;
    bool closed = false;
    std::map<std::size_t, std::pair<SentenceChunk, SynthResult>> ready;
    std::size_t next_play = 0;
    bool done = false;
    UtteranceMetrics metrics;
  };

  void worker_loop();
  void emitter_loop();
  bool finished(const Utterance& u) const;

  std::shared_ptr<TtsBackend> backend_;
  VoiceRegistry voices_;
  std::shared_ptr<AudioSink> sink_;
  PipelineOptions options_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Job> jobs_;
  std::map<std::uint64_t, Utterance> utterances_;
  std::deque<std::uint64_t> play_order_;
  std::optional<std::uint64_t> last_opened_;
  bool stopping_ = false;

  std::vector<std::thread> workers_;
  std::thread emitter_;
};

}  // namespace werewolf::speech
