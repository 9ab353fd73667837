// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>
#include <utility>

#include "auscult/types.hpp"

namespace auscult {

/// Read a RIFF/WAV file (PCM16 or IEEE float32, 1 or 2 channels), downmix to
/// mono by channel averaging and resample to target_rate.
TimeSignal load_wav(const std::string& path, int target_rate);

/// Write a mono 16-bit PCM WAV at sig.sample_rate. Samples are clipped to
/// [-1, 1) before quantization.
void save_wav(const TimeSignal& sig, const std::string& path);

/// Truncate both signals to the shorter length. Rates must match.
std::pair<TimeSignal, TimeSignal> align_lengths(const TimeSignal& a,
                                                const TimeSignal& b);

/// Rational-ratio polyphase resampler, windowed-sinc prototype with 64 taps
/// per phase and a Kaiser window (beta = 8).
TimeSignal resample(const TimeSignal& sig, int target_rate);

}  // namespace auscult
