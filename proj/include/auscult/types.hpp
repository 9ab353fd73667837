// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <Eigen/Dense>

#include "auscult/errors.hpp"

namespace auscult {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Sampled mono waveform. Amplitudes are dimensionless, nominally in [-1, 1].
struct TimeSignal {
  Vector samples;
  int sample_rate = 0;

  Index size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
  double energy() const { return samples.squaredNorm(); }
  double power() const {
    return samples.size() ? samples.squaredNorm() / samples.size() : 0.0;
  }
};

inline void check_finite(const TimeSignal& sig, const char* what) {
  if (sig.sample_rate <= 0)
    throw Error(std::string(what) + ": sample_rate must be positive");
  if (!sig.samples.allFinite())
    throw Error(std::string(what) + ": non-finite samples");
}

}  // namespace auscult
