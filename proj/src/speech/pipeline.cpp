#include "werewolf/speech/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace werewolf::speech {
namespace {

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

}  // namespace

void RealtimeSink::play(const AudioClip& clip) {
  const auto start = Clock::now();
  if (forward_) forward_(clip);
  std::this_thread::sleep_until(start + std::chrono::duration_cast<Clock::duration>(
                                            std::chrono::duration<double>(clip.duration())));
}

WavDirectorySink::WavDirectorySink(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void WavDirectorySink::play(const AudioClip& clip) {
  const auto name = "u" + std::to_string(clip.utterance) + "_c" + std::to_string(clip.index) + ".wav";
  std::ofstream out(dir_ / name, std::ios::binary);
  const auto bytes = encode_wav(clip.samples, clip.sample_rate);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

SynthResult synthesize(TtsBackend& backend, const SentenceChunk& chunk, const VoiceProfile& voice,
                       double fallback_chars_per_second) {
  SynthResult out;
  out.clip.utterance = chunk.utterance;
  out.clip.index = chunk.index;
  const auto start = Clock::now();
  try {
    auto pcm = to_canonical(backend.speak(chunk.text, voice.reference_id));
    out.clip.samples = std::move(pcm.samples);
    out.clip.sample_rate = pcm.sample_rate;
  } catch (const TtsError& e) {
    out.degradation = std::string(e.kind() == TtsError::Kind::Timeout ? "backend-timeout: " : "backend-error: ") +
                      e.what();
  } catch (const std::exception& e) {
    out.degradation = std::string("backend-error: ") + e.what();
  }
  if (out.degradation) {
    out.clip.samples = silence(estimated_duration(chunk.text, fallback_chars_per_second));
    out.clip.sample_rate = kSampleRate;
  }
  out.synth_seconds = seconds(Clock::now() - start);
  return out;
}

nlohmann::json to_json(const UtteranceMetrics& m) {
  nlohmann::json playback = nlohmann::json::array();
  for (const auto& p : m.playback) {
    playback.push_back({{"index", p.index}, {"start", seconds(p.start - m.stream_start)},
                        {"end", seconds(p.end - m.stream_start)}});
  }
  nlohmann::json degradations = nlohmann::json::array();
  for (const auto& d : m.degradations) degradations.push_back({{"index", d.index}, {"cause", d.cause}});
  return {{"utterance", m.utterance},
          {"voice_id", m.voice_id},
          {"first_audio_latency", m.first_audio_latency},
          {"inter_chunk_gaps", m.inter_chunk_gaps},
          {"synth_times", m.synth_times},
          {"playback_times", m.playback_times},
          {"playback", playback},
          {"degradations", degradations}};
}

SpeechPipeline::SpeechPipeline(std::shared_ptr<TtsBackend> backend, VoiceRegistry voices,
                               std::shared_ptr<AudioSink> sink, PipelineOptions options)
    : backend_(std::move(backend)), voices_(std::move(voices)), sink_(std::move(sink)), options_(std::move(options)) {
  if (!backend_ || !sink_) throw std::invalid_argument("speech pipeline needs a backend and a sink");
  const std::size_t width = std::max<std::size_t>(1, options_.workers);
  for (std::size_t i = 0; i < width; ++i) workers_.emplace_back([this] { worker_loop(); });
  emitter_ = std::thread([this] { emitter_loop(); });
}

SpeechPipeline::~SpeechPipeline() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  cv_.notify_all();
  for (auto& w : workers_) w.join();
  emitter_.join();
}

void SpeechPipeline::open(std::uint64_t utterance, const std::string& voice_id, Clock::time_point stream_start) {
  const VoiceProfile& voice = voices_.at(voice_id);
  std::lock_guard lock(mu_);
  if (last_opened_ && utterance <= *last_opened_) {
    throw std::invalid_argument("utterance ids must increase");
  }
  last_opened_ = utterance;
  Utterance u;
  u.voice = voice;
  u.metrics.utterance = utterance;
  u.metrics.voice_id = voice.voice_id;
  u.metrics.stream_start = stream_start;
  utterances_.emplace(utterance, std::move(u));
  play_order_.push_back(utterance);
}

void SpeechPipeline::submit(const SentenceChunk& chunk) {
  {
    std::lock_guard lock(mu_);
    auto it = utterances_.find(chunk.utterance);
    if (it == utterances_.end()) throw std::invalid_argument("chunk for an utterance that is not open");
    Utterance& u = it->second;
    if (u.closed) throw std::logic_error("chunk after the utterance was closed");
    if (chunk.index != u.submitted) throw std::invalid_argument("chunk indices must be dense");
    if (chunk.text.empty()) throw std::invalid_argument("empty chunk");
    ++u.submitted;
    if (chunk.is_final) u.closed = true;
    jobs_.push_back(Job{chunk, u.voice});
  }
  cv_.notify_all();
}

void SpeechPipeline::close(std::uint64_t utterance) {
  {
    std::lock_guard lock(mu_);
    auto it = utterances_.find(utterance);
    if (it == utterances_.end()) return;
    it->second.closed = true;
  }
  cv_.notify_all();
}

UtteranceMetrics SpeechPipeline::wait(std::uint64_t utterance) {
  std::unique_lock lock(mu_);
  auto it = utterances_.find(utterance);
  if (it == utterances_.end()) throw std::invalid_argument("unknown utterance");
  cv_.wait(lock, [&] { return it->second.done || stopping_; });
  UtteranceMetrics metrics = std::move(it->second.metrics);
  utterances_.erase(it);
  return metrics;
}

bool SpeechPipeline::finished(const Utterance& u) const { return u.closed && u.next_play == u.submitted; }

void SpeechPipeline::worker_loop() {
  for (;;) {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return stopping_ || !jobs_.empty(); });
    if (stopping_) return;
    Job job = std::move(jobs_.front());
    jobs_.pop_front();
    lock.unlock();

    SynthResult result = synthesize(*backend_, job.chunk, job.voice, options_.fallback_chars_per_second);

    lock.lock();
    auto it = utterances_.find(job.chunk.utterance);
    if (it != utterances_.end()) {
      const std::size_t index = job.chunk.index;
      it->second.ready.emplace(index, std::make_pair(std::move(job.chunk), std::move(result)));
    }
    lock.unlock();
    cv_.notify_all();
  }
}

void SpeechPipeline::emitter_loop() {
  for (;;) {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] {
      if (stopping_) return true;
      if (play_order_.empty()) return false;
      const Utterance& u = utterances_.at(play_order_.front());
      return finished(u) || u.ready.contains(u.next_play);
    });
    if (stopping_) return;

    const std::uint64_t id = play_order_.front();
    Utterance& u = utterances_.at(id);
    if (finished(u)) {
      std::sort(u.metrics.degradations.begin(), u.metrics.degradations.end(),
                [](const auto& a, const auto& b) { return a.index < b.index; });
      u.done = true;
      play_order_.pop_front();
      lock.unlock();
      cv_.notify_all();
      continue;
    }

    auto node = u.ready.extract(u.next_play);
    SentenceChunk chunk = std::move(node.mapped().first);
    SynthResult result = std::move(node.mapped().second);
    lock.unlock();

    PlaybackEvent event{id, chunk.index, Clock::now(), {}};
    if (options_.on_playback_start) options_.on_playback_start(event);
    sink_->play(result.clip);
    event.end = Clock::now();

    lock.lock();
    UtteranceMetrics& m = u.metrics;
    if (chunk.index == 0) {
      m.first_audio_latency = std::max(0.0, seconds(event.start - m.stream_start));
    } else {
      m.inter_chunk_gaps.push_back(std::max(0.0, seconds(event.start - m.playback.back().end)));
    }
    m.synth_times.push_back(result.synth_seconds);
    m.playback_times.push_back(seconds(event.end - event.start));
    m.playback.push_back(event);
    if (result.degradation) m.degradations.push_back({chunk.index, *result.degradation});
    ++u.next_play;
    lock.unlock();
    cv_.notify_all();
  }
}

}  // namespace werewolf::speech
