// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cmath>
#include <random>

#include "auscult/types.hpp"

namespace auscult::testing {

inline TimeSignal white_noise(Index n, int rate, std::uint64_t seed,
                              double amplitude = 0.3) {
  std::mt19937_64 gen(seed);
  Vector v(n);
  for (Index i = 0; i < n; ++i) {
    const double u = double(gen() >> 11) * 0x1p-53;
    v[i] = amplitude * (2.0 * u - 1.0);
  }
  return {std::move(v), rate};
}

inline TimeSignal sine(double freq_hz, double duration_s, int rate,
                       double amplitude = 0.5) {
  const Index n = Index(duration_s * rate);
  Vector v(n);
  for (Index i = 0; i < n; ++i)
    v[i] = amplitude * std::sin(2.0 * M_PI * freq_hz * i / rate);
  return {std::move(v), rate};
}

/// Band-limited periodic pulse train imitating heart sounds: pulses at a
/// fixed repetition rate, each a raised-cosine burst of partials confined to
/// [low_hz, high_hz].
inline TimeSignal pulse_train(double duration_s, int rate,
                              double pulse_rate_hz = 1.2,
                              double low_hz = 20.0, double high_hz = 200.0) {
  const Index n = Index(duration_s * rate);
  const Index period = Index(rate / pulse_rate_hz);
  const Index pulse_len = rate / 10;  // 100 ms bursts
  Vector v = Vector::Zero(n);
  for (Index start = 0; start < n; start += period) {
    for (Index i = 0; i < pulse_len && start + i < n; ++i) {
      const double env =
          0.5 * (1.0 - std::cos(2.0 * M_PI * i / (pulse_len - 1)));
      double burst = 0.0;
      for (double f = low_hz; f <= high_hz; f += 36.0)
        burst += std::sin(2.0 * M_PI * f * i / rate);
      v[start + i] = 0.12 * env * burst;
    }
  }
  return {std::move(v), rate};
}

/// A short noise segment looped to the requested duration; the repetitive
/// ambient-noise model.
inline TimeSignal looped_noise(double segment_s, double duration_s, int rate,
                               std::uint64_t seed) {
  const TimeSignal segment = white_noise(Index(segment_s * rate), rate, seed);
  const Index n = Index(duration_s * rate);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = segment.samples[i % segment.size()];
  return {std::move(v), rate};
}

}  // namespace auscult::testing
