// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "auscult/audio_io.hpp"
#include "fixtures.hpp"

using namespace auscult;
using namespace auscult::testing;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

// Minimal raw writer so tests can produce stereo and float32 inputs, which
// save_wav deliberately does not emit.
void write_raw_wav(const std::string& path, const std::vector<float>& frames,
                   int channels, int rate, bool as_float) {
  std::ofstream f(path, std::ios::binary);
  const uint16_t bits = as_float ? 32 : 16;
  const uint32_t data_bytes = uint32_t(frames.size()) * bits / 8;
  auto u32 = [&](uint32_t v) { f.write(reinterpret_cast<char*>(&v), 4); };
  auto u16 = [&](uint16_t v) { f.write(reinterpret_cast<char*>(&v), 2); };
  f.write("RIFF", 4);
  u32(36 + data_bytes);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  u32(16);
  u16(as_float ? 3 : 1);
  u16(uint16_t(channels));
  u32(uint32_t(rate));
  u32(uint32_t(rate * channels * bits / 8));
  u16(uint16_t(channels * bits / 8));
  u16(bits);
  f.write("data", 4);
  u32(data_bytes);
  for (float v : frames) {
    if (as_float) {
      f.write(reinterpret_cast<char*>(&v), 4);
    } else {
      int16_t q = int16_t(std::lrint(v * 32768.0));
      f.write(reinterpret_cast<char*>(&q), 2);
    }
  }
}

}  // namespace

TEST_CASE("save/load round trip stays within one quantization step") {
  TempFile tmp("auscult_rt.wav");
  TimeSignal sig = white_noise(40000, 8000, 7, 0.9);
  save_wav(sig, tmp.path);
  TimeSignal back = load_wav(tmp.path, 8000);
  REQUIRE(back.size() == sig.size());
  CHECK(back.sample_rate == 8000);
  CHECK((back.samples - sig.samples).cwiseAbs().maxCoeff() <= 0x1p-15);
}

TEST_CASE("identity path preserves length") {
  TempFile tmp("auscult_id.wav");
  save_wav(white_noise(40000, 8000, 3), tmp.path);
  CHECK(load_wav(tmp.path, 8000).size() == 40000);
}

TEST_CASE("2:1 decimation halves the length") {
  TempFile tmp("auscult_dec.wav");
  save_wav(white_noise(80000, 16000, 5), tmp.path);
  const Index n = load_wav(tmp.path, 8000).size();
  CHECK(std::abs(n - 40000) <= 1);
}

TEST_CASE("symmetric stereo channels average to silence") {
  TempFile tmp("auscult_st.wav");
  std::vector<float> frames;
  for (int i = 0; i < 1000; ++i) {
    const float v = 0.25f * std::sin(0.01f * i);
    frames.push_back(v);
    frames.push_back(-v);
  }
  write_raw_wav(tmp.path, frames, 2, 8000, false);
  TimeSignal sig = load_wav(tmp.path, 8000);
  CHECK(sig.samples.cwiseAbs().maxCoeff() <= 0x1p-15);
}

TEST_CASE("float32 input is accepted") {
  TempFile tmp("auscult_f32.wav");
  std::vector<float> frames(512, 0.5f);
  write_raw_wav(tmp.path, frames, 1, 8000, true);
  TimeSignal sig = load_wav(tmp.path, 8000);
  REQUIRE(sig.size() == 512);
  CHECK(sig.samples[100] == doctest::Approx(0.5));
}

TEST_CASE("clipping stores out-of-range samples as the largest code") {
  TempFile tmp("auscult_clip.wav");
  TimeSignal sig{Vector::Constant(16, 1.5), 8000};
  save_wav(sig, tmp.path);
  TimeSignal back = load_wav(tmp.path, 8000);
  CHECK(back.samples[0] == doctest::Approx(32767.0 / 32768.0));
}

TEST_CASE("all-zero signal round trips to zeros") {
  TempFile tmp("auscult_zero.wav");
  save_wav({Vector::Zero(64), 8000}, tmp.path);
  CHECK(load_wav(tmp.path, 8000).samples.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("resampled 100 Hz sine keeps its DFT peak within one bin") {
  TimeSignal hi = sine(100.0, 2.0, 16000);
  TimeSignal lo = resample(hi, 8000);
  REQUIRE(lo.sample_rate == 8000);

  const int nfft = 1024;
  Index peak = 0;
  double best = 0.0;
  for (int k = 0; k < nfft / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (int i = 0; i < nfft; ++i)
      acc += lo.samples[4000 + i] *
             std::exp(std::complex<double>(0, -2.0 * M_PI * k * i / nfft));
    if (std::abs(acc) > best) {
      best = std::abs(acc);
      peak = k;
    }
  }
  const int expect = int(std::lround(100.0 * nfft / 8000.0));
  CHECK(std::abs(int(peak) - expect) <= 1);
}

TEST_CASE("align_lengths truncates to the shorter signal") {
  TimeSignal a = white_noise(40000, 8000, 1);
  TimeSignal b = white_noise(39000, 8000, 2);
  auto [a2, b2] = align_lengths(a, b);
  CHECK(a2.size() == 39000);
  CHECK(b2.size() == 39000);

  auto [a3, b3] = align_lengths(a, a);
  CHECK(a3.size() == 40000);

  TimeSignal one = white_noise(1, 8000, 3);
  auto [a4, b4] = align_lengths(one, a);
  CHECK(a4.size() == 1);
  CHECK(b4.size() == 1);
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(load_wav("/nonexistent/file.wav", 8000), UnreadableFile);
  CHECK_THROWS_AS(
      align_lengths(white_noise(10, 8000, 1), white_noise(10, 16000, 1)),
      RateMismatch);

  TempFile tmp("auscult_empty.wav");
  write_raw_wav(tmp.path, {}, 1, 8000, false);
  CHECK_THROWS_AS(load_wav(tmp.path, 8000), EmptyAudio);

  TempFile bad("auscult_bad.wav");
  std::ofstream(bad.path) << "not a wav at all";
  CHECK_THROWS_AS(load_wav(bad.path, 8000), UnreadableFile);
}
