// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "auscult/types.hpp"

namespace auscult {

/// Normalized LMS adaptive noise canceller. The filter length matches the
/// reference baseline; step size and regularizer are conventional defaults.
struct NlmsConfig {
  int filter_len = 10;     // L
  double step_size = 0.5;  // mu, in (0, 2]
  double regularizer = 1e-6;
};

/// Cancel the reference channel y from the primary channel x. The error
/// signal (x minus the filtered reference) is the biomedical estimate.
/// Weights start at zero with zero-padded prehistory.
TimeSignal nlms_denoise(const TimeSignal& x, const TimeSignal& y,
                        const NlmsConfig& cfg);

}  // namespace auscult
