// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "auscult/eval.hpp"
#include "fixtures.hpp"

using namespace auscult;
using namespace auscult::testing;

namespace {

// Orthogonal unit-norm pair for closed-form projection checks.
std::pair<TimeSignal, TimeSignal> orthogonal_pair(Index n) {
  Vector a = Vector::Zero(n), b = Vector::Zero(n);
  for (Index i = 0; i < n; i += 2) a[i] = 1.0;
  for (Index i = 1; i < n; i += 2) b[i] = 1.0;
  a.normalize();
  b.normalize();
  return {{a, 8000}, {b, 8000}};
}

}  // namespace

TEST_CASE("perfect estimate hits the 300 dB cap") {
  TimeSignal s = white_noise(4000, 8000, 1);
  TimeSignal n = white_noise(4000, 8000, 2);
  BssScores scores = bss_metrics(s, s, n);
  CHECK(scores.sdr_db == kMetricCapDb);
  CHECK(scores.sir_db == kMetricCapDb);
}

TEST_CASE("closed-form 20 dB case on an orthogonal pair") {
  auto [ref, interf] = orthogonal_pair(4000);
  TimeSignal est{ref.samples + 0.1 * interf.samples, 8000};
  BssScores scores = bss_metrics(est, ref, interf);
  CHECK(scores.sdr_db == doctest::Approx(20.0).epsilon(1e-9));
  CHECK(scores.sir_db == doctest::Approx(20.0).epsilon(1e-9));
}

TEST_CASE("metrics are invariant to a positive gain on the estimate") {
  TimeSignal s = white_noise(4000, 8000, 3);
  TimeSignal n = white_noise(4000, 8000, 4);
  TimeSignal est{s.samples + 0.3 * n.samples, 8000};
  BssScores one = bss_metrics(est, s, n);
  TimeSignal scaled{2.5 * est.samples, 8000};
  BssScores two = bss_metrics(scaled, s, n);
  CHECK(one.sdr_db == doctest::Approx(two.sdr_db).epsilon(1e-9));
  CHECK(one.sir_db == doctest::Approx(two.sir_db).epsilon(1e-9));
}

TEST_CASE("SDR never exceeds SIR") {
  for (int trial = 0; trial < 20; ++trial) {
    TimeSignal s = white_noise(2000, 8000, 10 + trial);
    TimeSignal n = white_noise(2000, 8000, 50 + trial);
    TimeSignal est{s.samples + 0.2 * n.samples +
                       0.1 * white_noise(2000, 8000, 90 + trial).samples,
                   8000};
    BssScores scores = bss_metrics(est, s, n);
    CHECK(scores.sdr_db <= scores.sir_db + 1e-9);
  }
}

TEST_CASE("degenerate and zero inputs are rejected") {
  TimeSignal s = white_noise(1000, 8000, 5);
  TimeSignal silent{Vector::Zero(1000), 8000};
  CHECK_THROWS_AS(bss_metrics(s, silent, s), ZeroReference);
  CHECK_THROWS_AS(bss_metrics(s, s, silent), ZeroReference);
  TimeSignal collinear{2.0 * s.samples, 8000};
  CHECK_THROWS_AS(bss_metrics(s, s, collinear), DegenerateProjection);
  TimeSignal shorter = white_noise(999, 8000, 6);
  CHECK_THROWS_AS(bss_metrics(shorter, s, s), LengthMismatch);
}

TEST_CASE("identity denoiser improves nothing") {
  TimeSignal s = white_noise(4000, 8000, 7);
  TimeSignal n = white_noise(4000, 8000, 8);
  TimeSignal x{s.samples + n.samples, 8000};
  EvalReport report = improvement_report(s, n, x, {x});
  CHECK(std::abs(report.sdr_improvement_median_db) < 1e-12);
  CHECK(std::abs(report.sir_improvement_median_db) < 1e-12);
}

TEST_CASE("perfect denoiser improvement is the cap minus the input metric") {
  TimeSignal s = white_noise(4000, 8000, 9);
  TimeSignal n = white_noise(4000, 8000, 10);
  TimeSignal x{s.samples + n.samples, 8000};
  EvalReport report = improvement_report(s, n, x, {s});
  CHECK(report.sdr_improvement_median_db ==
        doctest::Approx(kMetricCapDb - report.input_sdr_db));
  CHECK(report.sdr_improvement_median_db > 0.0);
}

TEST_CASE("median is taken per metric over runs") {
  CHECK(median({2.0, 5.0, 9.0}) == 5.0);
  CHECK(median({2.0, 9.0}) == 5.5);
  CHECK(median({4.0}) == 4.0);
  CHECK_THROWS_AS(median({}), Error);
}

TEST_CASE("proposed-method operation counts match the reported totals") {
  OpCount ops = complexity_estimate("proposed", {{"i_o", 3},
                                                 {"M", 50},
                                                 {"F", 512},
                                                 {"T", 32},
                                                 {"K_N", 256},
                                                 {"K_S", 16},
                                                 {"N", 512}});
  CHECK(ops.multiplications_per_second ==
        doctest::Approx(3.32e9).epsilon(5e-3));
  CHECK(ops.additions_per_second == doctest::Approx(1.99e9).epsilon(5e-3));
}

TEST_CASE("nlms operation counts") {
  OpCount ops = complexity_estimate("nlms", {{"L", 10}, {"f_s", 8000}});
  CHECK(ops.multiplications_per_second == 248000.0);
  CHECK(ops.additions_per_second == 240000.0);
}

TEST_CASE("mss operation counts") {
  OpCount ops = complexity_estimate("mss", {{"F", 400}, {"T", 23}, {"N", 400}});
  CHECK(ops.multiplications_per_second ==
        doctest::Approx(2.78e5).epsilon(5e-3));
  CHECK(ops.additions_per_second == doctest::Approx(4.10e5).epsilon(5e-3));
}

TEST_CASE("missing parameters are reported") {
  CHECK_THROWS_AS(complexity_estimate("nlms", {{"L", 10}}), MissingParameter);
  CHECK_THROWS_AS(complexity_estimate("unknown", {}), Error);
}
