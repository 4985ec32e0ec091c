#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace werewolf::speech {

/// Canonical playback format: 16-bit mono PCM at 32 kHz.
inline constexpr int kSampleRate = 32000;

struct AudioClip {
  std::uint64_t utterance = 0;
  std::size_t index = 0;
  std::vector<std::int16_t> samples;
  int sample_rate = kSampleRate;

  double duration() const noexcept {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

struct PcmAudio {
  std::vector<std::int16_t> samples;  // mono
  int sample_rate = kSampleRate;
};

/// 44-byte RIFF header + little-endian PCM16 mono.
std::string encode_wav(const std::vector<std::int16_t>& samples, int sample_rate);

/// Accepts PCM16 WAV with any channel count (downmixed to mono); skips
/// unknown chunks. Throws std::runtime_error on anything else.
PcmAudio decode_wav(std::string_view bytes);

/// Linear-interpolation resampler.
std::vector<std::int16_t> resample_linear(const std::vector<std::int16_t>& samples, int from_rate, int to_rate);

/// Decodes and converts to the canonical rate.
PcmAudio to_canonical(std::string_view wav_bytes);

std::vector<std::int16_t> silence(double seconds, int sample_rate = kSampleRate);

}  // namespace werewolf::speech
