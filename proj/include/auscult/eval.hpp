// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <map>
#include <string>
#include <vector>

#include "auscult/types.hpp"

namespace auscult {

/// Cap substituted for infinite SDR/SIR so reports stay finite and orderable.
constexpr double kMetricCapDb = 300.0;

struct BssScores {
  double sdr_db = 0.0;
  double sir_db = 0.0;
};

struct EvalReport {
  std::vector<double> sdr_abs_db;  // per run
  std::vector<double> sir_abs_db;
  std::vector<double> sdr_improvement_db;
  std::vector<double> sir_improvement_db;
  double sdr_abs_median_db = 0.0;
  double sir_abs_median_db = 0.0;
  double sdr_improvement_median_db = 0.0;
  double sir_improvement_median_db = 0.0;
  double input_sdr_db = 0.0;  // metric of the unprocessed internal signal
  double input_sir_db = 0.0;
};

struct OpCount {
  double multiplications_per_second = 0.0;
  double additions_per_second = 0.0;
  std::string method;
};

/// Time-invariant-gain BSS-Eval decomposition: the estimate is projected onto
/// span{reference} (target) and span{reference, interference} (target +
/// interference error); the remainder is artifacts.
BssScores bss_metrics(const TimeSignal& estimate, const TimeSignal& reference,
                      const TimeSignal& interference);

/// Per-run SDR/SIR of each estimate, improvements over the unprocessed
/// internal signal, and per-metric medians.
EvalReport improvement_report(const TimeSignal& s, const TimeSignal& n,
                              const TimeSignal& x,
                              const std::vector<TimeSignal>& s_hats);

/// Operation counts per second for methods "proposed", "mss" and "nlms".
/// Required parameters: proposed (i_o, M, F, T, K_N, K_S, N);
/// mss (F, T, N); nlms (L, f_s).
OpCount complexity_estimate(const std::string& method,
                            const std::map<std::string, double>& params);

double median(std::vector<double> values);

}  // namespace auscult
