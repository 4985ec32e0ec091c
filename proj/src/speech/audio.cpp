#include "werewolf/speech/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace werewolf::speech {
namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}
std::uint32_t get_u32(std::string_view b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[at + i]);
  return v;
}
std::uint16_t get_u16(std::string_view b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) | (static_cast<unsigned char>(b[at + 1]) << 8));
}

}  // namespace

std::string encode_wav(const std::vector<std::int16_t>& samples, int sample_rate) {
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  put_u32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<std::uint32_t>(sample_rate));
  put_u32(out, static_cast<std::uint32_t>(sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  out += "data";
  put_u32(out, data_bytes);
  for (auto s : samples) put_u16(out, static_cast<std::uint16_t>(s));
  return out;
}

PcmAudio decode_wav(std::string_view bytes) {
  if (bytes.size() < 12 || bytes.substr(0, 4) != "RIFF" || bytes.substr(8, 4) != "WAVE") {
    throw std::runtime_error("not a RIFF/WAVE stream");
  }
  int channels = 0, bits = 0, rate = 0, format = 0;
  std::size_t at = 12;
  while (at + 8 <= bytes.size()) {
    const auto id = bytes.substr(at, 4);
    const std::size_t size = get_u32(bytes, at + 4);
    const std::size_t body = at + 8;
    if (id == "fmt ") {
      if (size < 16 || body + 16 > bytes.size()) throw std::runtime_error("short fmt chunk");
      format = get_u16(bytes, body);
      channels = get_u16(bytes, body + 2);
      rate = static_cast<int>(get_u32(bytes, body + 4));
      bits = get_u16(bytes, body + 14);
    } else if (id == "data") {
      if (format != 1 || bits != 16 || channels < 1 || rate <= 0) {
        throw std::runtime_error("unsupported WAV format (need PCM16)");
      }
      // Some servers stream WAV with a placeholder size; clamp to what we have.
      const std::size_t available = std::min(size, bytes.size() - body);
      const std::size_t frames = available / (2 * static_cast<std::size_t>(channels));
      PcmAudio out;
      out.sample_rate = rate;
      out.samples.resize(frames);
      for (std::size_t f = 0; f < frames; ++f) {
        long sum = 0;
        for (int c = 0; c < channels; ++c) {
          sum += static_cast<std::int16_t>(get_u16(bytes, body + (f * channels + c) * 2));
        }
        out.samples[f] = static_cast<std::int16_t>(sum / channels);
      }
      return out;
    }
    at = body + size + (size & 1);
  }
  throw std::runtime_error("WAV has no data chunk");
}

std::vector<std::int16_t> resample_linear(const std::vector<std::int16_t>& samples, int from_rate, int to_rate) {
  if (from_rate == to_rate || samples.empty()) return samples;
  const auto out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(samples.size()) * to_rate / static_cast<double>(from_rate)));
  std::vector<std::int16_t> out(out_len);
  const double step = static_cast<double>(from_rate) / to_rate;
  for (std::size_t i = 0; i < out_len; ++i) {
    const double pos = i * step;
    const auto k = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(k);
    const double a = samples[std::min(k, samples.size() - 1)];
    const double b = samples[std::min(k + 1, samples.size() - 1)];
    out[i] = static_cast<std::int16_t>(std::lround(a + (b - a) * frac));
  }
  return out;
}

PcmAudio to_canonical(std::string_view wav_bytes) {
  auto pcm = decode_wav(wav_bytes);
  pcm.samples = resample_linear(pcm.samples, pcm.sample_rate, kSampleRate);
  pcm.sample_rate = kSampleRate;
  return pcm;
}

std::vector<std::int16_t> silence(double seconds, int sample_rate) {
  return std::vector<std::int16_t>(static_cast<std::size_t>(std::llround(std::max(0.0, seconds) * sample_rate)), 0);
}

}  // namespace werewolf::speech
