// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "auscult/nlms.hpp"

namespace auscult {

TimeSignal nlms_denoise(const TimeSignal& x, const TimeSignal& y,
                        const NlmsConfig& cfg) {
  if (x.size() != y.size()) throw LengthMismatch("nlms_denoise: lengths differ");
  if (x.sample_rate != y.sample_rate)
    throw RateMismatch("nlms_denoise: sample rates differ");
  if (cfg.filter_len < 1 || cfg.step_size < 0.0 || cfg.step_size > 2.0 ||
      cfg.regularizer <= 0.0)
    throw Error("nlms_denoise: bad configuration");

  const int taps = cfg.filter_len;
  Vector w = Vector::Zero(taps);
  Vector ref = Vector::Zero(taps);  // [y(n), y(n-1), ..., y(n-L+1)]
  Vector err(x.size());

  for (Index n = 0; n < x.size(); ++n) {
    for (int k = taps - 1; k > 0; --k) ref[k] = ref[k - 1];
    ref[0] = y.samples[n];
    const double e = x.samples[n] - w.dot(ref);
    err[n] = e;
    w += cfg.step_size * e / (ref.squaredNorm() + cfg.regularizer) * ref;
  }
  return {std::move(err), x.sample_rate};
}

}  // namespace auscult
