// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <optional>

#include "auscult/types.hpp"

namespace auscult {

enum class Scenario { Ideal, Real };

/// Recipe for one evaluation mixture.
struct MixtureSpec {
  TimeSignal biomedical;           // s(t)
  TimeSignal ambient;              // n_a(t)
  double target_snr_db = 0.0;
  Scenario scenario = Scenario::Ideal;
  std::optional<TimeSignal> room_ir;  // h_R
  std::optional<TimeSignal> body_ir;  // h_H or h_L per auscultation site
  double delay_ms = 0.0;              // applied to the external channel
};

struct MixResult {
  TimeSignal internal;   // x(t) = s(t) + n(t)
  TimeSignal external;   // y(t)
  TimeSignal noise;      // n(t), scaled to hit the target SNR
  TimeSignal noise_rb;   // n_iRB(t), real scenario only
  TimeSignal noise_mix;  // n_iMIX(t), real scenario only
  double alpha = 1.0;
  double snr_init_db = 0.0;
};

/// Shift right by round(d * f_s / 1000) samples, zero-filled head, original
/// length kept.
TimeSignal apply_delay(const TimeSignal& sig, double delay_ms);

/// Linear convolution truncated to the dry signal's length.
TimeSignal convolve(const TimeSignal& sig, const TimeSignal& ir);

/// Ideal scenario: n = g * n_a with g chosen so SNR(s, n) hits the target
/// exactly; x = s + n; y is the raw ambient noise, optionally delayed.
MixResult mix_ideal(const TimeSignal& s, const TimeSignal& n_a, double snr_db,
                    double delay_ms = 0.0);

/// Real scenario: y = n_a (*) h_R; n_iRB = y (*) h_body;
/// n_iMIX = n_iRB + y; n = alpha * n_iMIX with
/// alpha = 10^((SNR_init - SNR) / 20).
MixResult mix_real(const MixtureSpec& spec);

}  // namespace auscult
