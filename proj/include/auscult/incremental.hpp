// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <utility>
#include <vector>

#include "auscult/nmpcf.hpp"
#include "auscult/types.hpp"

namespace auscult {

struct StageRecord {
  TimeSignal biomedical;  // s_hat_i
  TimeSignal noise;       // n_hat_i
  double final_objective = 0.0;
  std::vector<double> objective_history;
};

/// Per-stage outputs of the incremental driver; stages.back().biomedical is
/// the recommended estimate.
struct IncrementalTrace {
  std::vector<StageRecord> stages;
};

/// One full denoise pass: STFT both channels, normalize, jointly factorize,
/// separate, denormalize by the internal channel's factor, Wiener-split.
/// Returns (s_hat, n_hat).
std::pair<TimeSignal, TimeSignal> denoise_once(const TimeSignal& x,
                                               const TimeSignal& y,
                                               const DenoiseConfig& cfg,
                                               int run_index, int stage = 0);

/// Incremental driver: stage 1 consumes x, stage i+1 consumes stage i's
/// biomedical estimate; the external channel is fixed throughout. Each stage
/// re-initializes its model from (rng_seed, run_index, stage).
IncrementalTrace denoise_incremental(const TimeSignal& x, const TimeSignal& y,
                                     const DenoiseConfig& cfg, int run_index);

}  // namespace auscult
