// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "auscult/spectral.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace auscult {

namespace {

constexpr double kEnvelopeFloor = 1e-8;
constexpr double kMaskEps = 1e-12;

void check_metadata(const ComplexSpectrogram& spec) {
  if (spec.window_len <= 0 || spec.fft_len < spec.window_len ||
      spec.frame_hop <= 0 || spec.sample_rate <= 0)
    throw InconsistentMetadata("bad STFT frame metadata");
  if (spec.bins.rows() != spec.fft_len / 2 + 1)
    throw InconsistentMetadata("bin count does not match fft_len");
  if (spec.bins.cols() < 1)
    throw InconsistentMetadata("empty spectrogram");
}

}  // namespace

Vector hamming_window(int window_len) {
  Vector w(window_len);
  for (int n = 0; n < window_len; ++n)
    w[n] = 0.54 - 0.46 * std::cos(2.0 * M_PI * n / window_len);
  return w;
}

ComplexSpectrogram stft(const TimeSignal& sig, int window_len, double overlap,
                        int fft_len) {
  check_finite(sig, "stft");
  if (overlap <= 0.0 || overlap >= 1.0)
    throw BadOverlap("overlap must be in (0, 1)");
  if (window_len > fft_len)
    throw InconsistentMetadata("window_len exceeds fft_len");
  if (sig.size() < window_len)
    throw SignalTooShort("signal shorter than one analysis window");

  const int hop = int(std::lround(window_len * (1.0 - overlap)));
  const Index num_frames = (sig.size() - window_len) / hop + 1;
  const Index num_bins = fft_len / 2 + 1;
  const Vector window = hamming_window(window_len);

  Eigen::FFT<double> fft;
  std::vector<double> frame(fft_len, 0.0);
  std::vector<std::complex<double>> spectrum(fft_len);

  ComplexSpectrogram out;
  out.bins.resize(num_bins, num_frames);
  out.frame_hop = hop;
  out.window_len = window_len;
  out.fft_len = fft_len;
  out.sample_rate = sig.sample_rate;

  for (Index t = 0; t < num_frames; ++t) {
    const Index start = t * hop;
    for (int n = 0; n < window_len; ++n)
      frame[n] = sig.samples[start + n] * window[n];
    std::fill(frame.begin() + window_len, frame.end(), 0.0);
    fft.fwd(spectrum, frame);
    for (Index f = 0; f < num_bins; ++f) out.bins(f, t) = spectrum[f];
  }
  return out;
}

TimeSignal istft(const ComplexSpectrogram& spec, Index out_len) {
  check_metadata(spec);
  const int hop = spec.frame_hop;
  const int window_len = spec.window_len;
  const Index num_frames = spec.num_frames();
  const Index full_len = (num_frames - 1) * Index(hop) + window_len;
  const Vector window = hamming_window(window_len);

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum(spec.fft_len / 2 + 1);
  std::vector<double> frame(spec.fft_len);

  Vector acc = Vector::Zero(full_len);
  Vector envelope = Vector::Zero(full_len);
  for (Index t = 0; t < num_frames; ++t) {
    for (Index f = 0; f < spec.num_bins(); ++f) spectrum[f] = spec.bins(f, t);
    fft.inv(frame, spectrum, spec.fft_len);  // real inverse, one-sided input
    const Index start = t * hop;
    for (int n = 0; n < window_len; ++n) {
      acc[start + n] += frame[n] * window[n];
      envelope[start + n] += window[n] * window[n];
    }
  }
  for (Index i = 0; i < full_len; ++i)
    acc[i] = envelope[i] > kEnvelopeFloor ? acc[i] / envelope[i] : 0.0;

  Vector out = Vector::Zero(out_len);
  out.head(std::min(out_len, full_len)) = acc.head(std::min(out_len, full_len));
  return {std::move(out), spec.sample_rate};
}

MagSpectrogram magnitude(const ComplexSpectrogram& spec) {
  MagSpectrogram mag;
  mag.values = spec.bins.cwiseAbs();
  mag.norm_factor = 1.0;
  mag.frame_hop = spec.frame_hop;
  mag.window_len = spec.window_len;
  mag.fft_len = spec.fft_len;
  mag.sample_rate = spec.sample_rate;
  return mag;
}

MagSpectrogram normalize(const MagSpectrogram& mag) {
  const double mean = mag.values.mean();
  if (mean <= 0.0)
    throw AllZeroSpectrogram("cannot normalize an all-zero spectrogram");
  MagSpectrogram out = mag;
  out.values /= mean;
  out.norm_factor = mean;
  return out;
}

MagSpectrogram denormalize(const MagSpectrogram& mag, double factor) {
  if (factor <= 0.0) throw NonPositiveFactor("denormalize: factor must be > 0");
  MagSpectrogram out = mag;
  out.values *= factor;
  out.norm_factor = 1.0;
  return out;
}

std::pair<TimeSignal, TimeSignal> wiener_split(const ComplexSpectrogram& xc,
                                               const MagSpectrogram& xs_hat,
                                               const MagSpectrogram& xn_hat,
                                               Index out_len) {
  if (xs_hat.values.rows() != xc.bins.rows() ||
      xs_hat.values.cols() != xc.bins.cols() ||
      xn_hat.values.rows() != xc.bins.rows() ||
      xn_hat.values.cols() != xc.bins.cols())
    throw ShapeMismatch("wiener_split: grid shapes differ");

  ComplexSpectrogram s_spec = xc;
  ComplexSpectrogram n_spec = xc;
  for (Index t = 0; t < xc.num_frames(); ++t) {
    for (Index f = 0; f < xc.num_bins(); ++f) {
      const double ps = xs_hat.values(f, t) * xs_hat.values(f, t);
      const double pn = xn_hat.values(f, t) * xn_hat.values(f, t);
      const double den = ps + pn;
      // mask_n = 1 - mask_s keeps the pair complementary bit-exactly.
      const double mask_s = den < kMaskEps ? 0.5 : ps / den;
      const double mask_n = 1.0 - mask_s;
      s_spec.bins(f, t) = xc.bins(f, t) * mask_s;
      n_spec.bins(f, t) = xc.bins(f, t) * mask_n;
    }
  }
  return {istft(s_spec, out_len), istft(n_spec, out_len)};
}

}  // namespace auscult
