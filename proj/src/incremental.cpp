// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "auscult/incremental.hpp"

namespace auscult {

namespace {

// One pass against a precomputed normalized external magnitude grid, so the
// incremental driver feeds the factorization a bit-identical Y every stage.
StageRecord stage_pass(const TimeSignal& x, const MagSpectrogram& y_norm,
                       const DenoiseConfig& cfg, int run_index, int stage) {
  const ComplexSpectrogram xc =
      stft(x, cfg.window_len, cfg.overlap, cfg.fft_len);
  const MagSpectrogram x_norm = normalize(magnitude(xc));
  if (x_norm.values.cols() != y_norm.values.cols())
    throw ShapeMismatch("internal/external frame counts differ");

  StageRecord rec;
  const NmpcfModel model = factorize(x_norm, y_norm, cfg, run_index, stage,
                                     &rec.objective_history);
  rec.final_objective = rec.objective_history.back();

  auto [xs_hat, xn_hat] = separate(x_norm, model);
  xs_hat = denormalize(xs_hat, x_norm.norm_factor);
  xn_hat = denormalize(xn_hat, x_norm.norm_factor);
  std::tie(rec.biomedical, rec.noise) =
      wiener_split(xc, xs_hat, xn_hat, x.size());
  return rec;
}

MagSpectrogram external_grid(const TimeSignal& y, const DenoiseConfig& cfg) {
  return normalize(
      magnitude(stft(y, cfg.window_len, cfg.overlap, cfg.fft_len)));
}

}  // namespace

std::pair<TimeSignal, TimeSignal> denoise_once(const TimeSignal& x,
                                               const TimeSignal& y,
                                               const DenoiseConfig& cfg,
                                               int run_index, int stage) {
  if (x.size() != y.size()) throw LengthMismatch("denoise_once: lengths differ");
  if (x.sample_rate != y.sample_rate)
    throw RateMismatch("denoise_once: sample rates differ");
  StageRecord rec =
      stage_pass(x, external_grid(y, cfg), cfg, run_index, stage);
  return {std::move(rec.biomedical), std::move(rec.noise)};
}

IncrementalTrace denoise_incremental(const TimeSignal& x, const TimeSignal& y,
                                     const DenoiseConfig& cfg, int run_index) {
  if (x.size() != y.size())
    throw LengthMismatch("denoise_incremental: lengths differ");
  if (x.sample_rate != y.sample_rate)
    throw RateMismatch("denoise_incremental: sample rates differ");

  const MagSpectrogram y_norm = external_grid(y, cfg);
  IncrementalTrace trace;
  TimeSignal current = x;
  for (int stage = 0; stage < cfg.incremental_iters; ++stage) {
    trace.stages.push_back(stage_pass(current, y_norm, cfg, run_index, stage));
    current = trace.stages.back().biomedical;
  }
  return trace;
}

}  // namespace auscult
