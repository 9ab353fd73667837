// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "auscult/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numeric>
#include <vector>

namespace auscult {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint32_t read_u32(const uint8_t* p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
         uint32_t(p[3]) << 24;
}

uint16_t read_u16(const uint8_t* p) {
  return uint16_t(p[0]) | uint16_t(p[1]) << 8;
}

double bessel_i0(double x) {
  // Series expansion; converges fast for the beta values used here.
  double sum = 1.0, term = 1.0;
  const double q = x * x / 4.0;
  for (int k = 1; k < 64; ++k) {
    term *= q / (k * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

TimeSignal resample(const TimeSignal& sig, int target_rate) {
  check_finite(sig, "resample");
  if (target_rate <= 0) throw Error("resample: target_rate must be positive");
  if (target_rate == sig.sample_rate) return sig;

  const int g = std::gcd(sig.sample_rate, target_rate);
  const int up = target_rate / g;
  const int down = sig.sample_rate / g;

  // Zero-phase windowed-sinc prototype at the upsampled rate: 64 taps per
  // phase, Kaiser beta = 8, cutoff at the narrower of the two Nyquist limits.
  constexpr int kTapsPerPhase = 64;
  constexpr double kBeta = 8.0;
  const int center = kTapsPerPhase / 2 * up;
  const int proto_len = 2 * center + 1;
  const double cutoff = 0.5 / std::max(up, down);  // cycles per hi-rate sample
  std::vector<double> proto(proto_len);
  const double i0_beta = bessel_i0(kBeta);
  for (int n = 0; n < proto_len; ++n) {
    const double x = 2.0 * cutoff * (n - center);
    const double sinc = x == 0.0 ? 1.0 : std::sin(M_PI * x) / (M_PI * x);
    const double r = double(n - center) / center;
    const double kaiser =
        bessel_i0(kBeta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0_beta;
    proto[n] = 2.0 * cutoff * up * sinc * kaiser;
  }

  const Index n_in = sig.size();
  const Index n_out = (n_in * up + down - 1) / down;
  const int half_span = kTapsPerPhase / 2 + 1;
  Vector out(n_out);
  for (Index m = 0; m < n_out; ++m) {
    // Output sample m sits at hi-rate position m*down; the prototype index
    // pairing it with input sample j is m*down - j*up + center.
    const int64_t hi = int64_t(m) * down;
    const int64_t j_center = hi / up;
    double acc = 0.0;
    for (int64_t j = j_center - half_span; j <= j_center + half_span; ++j) {
      if (j < 0 || j >= n_in) continue;
      const int64_t p = hi - j * up + center;
      if (p < 0 || p >= proto_len) continue;
      acc += sig.samples[j] * proto[p];
    }
    out[m] = acc;
  }
  return {std::move(out), target_rate};
}

TimeSignal load_wav(const std::string& path, int target_rate) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UnreadableFile("cannot open " + path);
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(f)),
                            std::istreambuf_iterator<char>());
  if (data.size() < 44 || std::memcmp(data.data(), "RIFF", 4) != 0 ||
      std::memcmp(data.data() + 8, "WAVE", 4) != 0)
    throw UnreadableFile("not a RIFF/WAVE file: " + path);

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const uint8_t* pcm = nullptr;
  size_t pcm_bytes = 0;

  size_t pos = 12;
  while (pos + 8 <= data.size()) {
    const uint32_t chunk_size = read_u32(&data[pos + 4]);
    const uint8_t* body = &data[pos + 8];
    const size_t avail = std::min<size_t>(chunk_size, data.size() - pos - 8);
    if (std::memcmp(&data[pos], "fmt ", 4) == 0 && avail >= 16) {
      format = read_u16(body);
      channels = read_u16(body + 2);
      rate = read_u32(body + 4);
      bits = read_u16(body + 14);
      if (format == kFormatExtensible && avail >= 26)
        format = read_u16(body + 24);  // first two bytes of the sub-format GUID
    } else if (std::memcmp(&data[pos], "data", 4) == 0) {
      pcm = body;
      pcm_bytes = avail;
    }
    pos += 8 + chunk_size + (chunk_size & 1);
  }

  if (!pcm || rate == 0) throw UnreadableFile("missing fmt/data chunk: " + path);
  if (channels < 1 || channels > 2)
    throw UnsupportedEncoding("unsupported channel count: " + std::to_string(channels));
  const bool is_pcm16 = format == kFormatPcm && bits == 16;
  const bool is_f32 = format == kFormatFloat && bits == 32;
  if (!is_pcm16 && !is_f32)
    throw UnsupportedEncoding("expected PCM16 or float32 WAV: " + path);

  const size_t bytes_per_sample = bits / 8;
  const size_t n_frames = pcm_bytes / (bytes_per_sample * channels);
  if (n_frames == 0) throw EmptyAudio("no audio frames in " + path);

  Vector mono(n_frames);
  for (size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    for (int c = 0; c < channels; ++c) {
      const uint8_t* p = pcm + (i * channels + c) * bytes_per_sample;
      if (is_pcm16) {
        int16_t v;
        std::memcpy(&v, p, 2);
        acc += v / 32768.0;
      } else {
        float v;
        std::memcpy(&v, p, 4);
        acc += v;
      }
    }
    mono[i] = acc / channels;
  }

  TimeSignal sig{std::move(mono), int(rate)};
  check_finite(sig, "load_wav");
  return resample(sig, target_rate);
}

void save_wav(const TimeSignal& sig, const std::string& path) {
  check_finite(sig, "save_wav");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UnwritableFile("cannot open " + path + " for writing");

  const uint32_t n = uint32_t(sig.size());
  const uint32_t data_bytes = n * 2;
  const uint32_t rate = uint32_t(sig.sample_rate);
  const uint32_t byte_rate = rate * 2;

  auto put_u32 = [&f](uint32_t v) {
    char b[4] = {char(v), char(v >> 8), char(v >> 16), char(v >> 24)};
    f.write(b, 4);
  };
  auto put_u16 = [&f](uint16_t v) {
    char b[2] = {char(v), char(v >> 8)};
    f.write(b, 2);
  };

  f.write("RIFF", 4);
  put_u32(36 + data_bytes);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  put_u32(16);
  put_u16(kFormatPcm);
  put_u16(1);  // mono
  put_u32(rate);
  put_u32(byte_rate);
  put_u16(2);   // block align
  put_u16(16);  // bits
  f.write("data", 4);
  put_u32(data_bytes);
  for (Index i = 0; i < sig.size(); ++i) {
    const double clipped = std::clamp(sig.samples[i], -1.0, 32767.0 / 32768.0);
    put_u16(uint16_t(int16_t(std::lrint(clipped * 32768.0))));
  }
  if (!f) throw UnwritableFile("write failed: " + path);
}

std::pair<TimeSignal, TimeSignal> align_lengths(const TimeSignal& a,
                                                const TimeSignal& b) {
  if (a.sample_rate != b.sample_rate)
    throw RateMismatch("align_lengths: sample rates differ");
  const Index n = std::min(a.size(), b.size());
  return {TimeSignal{a.samples.head(n), a.sample_rate},
          TimeSignal{b.samples.head(n), b.sample_rate}};
}

}  // namespace auscult
