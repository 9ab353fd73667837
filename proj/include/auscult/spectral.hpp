// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <utility>

#include "auscult/types.hpp"

namespace auscult {

/// One-sided complex STFT grid, F x T with F = fft_len/2 + 1.
struct ComplexSpectrogram {
  ComplexMatrix bins;
  int frame_hop = 0;
  int window_len = 0;
  int fft_len = 0;
  int sample_rate = 0;

  Index num_bins() const { return bins.rows(); }
  Index num_frames() const { return bins.cols(); }
};

/// Non-negative magnitude grid sharing the STFT frame metadata. norm_factor
/// is the normalization denominator (1.0 when unnormalized).
struct MagSpectrogram {
  Matrix values;
  double norm_factor = 1.0;
  int frame_hop = 0;
  int window_len = 0;
  int fft_len = 0;
  int sample_rate = 0;
};

/// Periodic Hamming analysis window, 0.54 - 0.46 cos(2 pi n / N).
Vector hamming_window(int window_len);

ComplexSpectrogram stft(const TimeSignal& sig, int window_len, double overlap,
                        int fft_len);

/// Squared-window weighted overlap-add inverse, trimmed/padded to out_len.
TimeSignal istft(const ComplexSpectrogram& spec, Index out_len);

MagSpectrogram magnitude(const ComplexSpectrogram& spec);

/// Divide by the grid mean so the output mean is 1; records the mean as
/// norm_factor.
MagSpectrogram normalize(const MagSpectrogram& mag);

MagSpectrogram denormalize(const MagSpectrogram& mag, double factor);

/// Wiener-mask resynthesis: splits the complex mixture into (biomedical,
/// noise) time signals using the relative energies of the two magnitude
/// estimates. Masks sum to 1 exactly; where both estimates vanish each side
/// takes 0.5.
std::pair<TimeSignal, TimeSignal> wiener_split(const ComplexSpectrogram& xc,
                                               const MagSpectrogram& xs_hat,
                                               const MagSpectrogram& xn_hat,
                                               Index out_len);

}  // namespace auscult
