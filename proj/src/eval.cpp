// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "auscult/eval.hpp"

#include <algorithm>
#include <cmath>

namespace auscult {

namespace {

double capped_ratio_db(double num, double den) {
  if (num <= 0.0) return -kMetricCapDb;
  if (den <= 0.0) return kMetricCapDb;
  return std::clamp(10.0 * std::log10(num / den), -kMetricCapDb, kMetricCapDb);
}

double require(const std::map<std::string, double>& params,
               const std::string& key, const std::string& method) {
  auto it = params.find(key);
  if (it == params.end())
    throw MissingParameter(method + ": missing parameter " + key);
  return it->second;
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw Error("median of empty set");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

BssScores bss_metrics(const TimeSignal& estimate, const TimeSignal& reference,
                      const TimeSignal& interference) {
  if (estimate.size() != reference.size() ||
      estimate.size() != interference.size())
    throw LengthMismatch("bss_metrics: lengths differ");
  const double ss = reference.samples.squaredNorm();
  const double nn = interference.samples.squaredNorm();
  if (ss <= 0.0) throw ZeroReference("bss_metrics: silent reference");
  if (nn <= 0.0) throw ZeroReference("bss_metrics: silent interference");

  const double es = estimate.samples.dot(reference.samples);
  const double en = estimate.samples.dot(interference.samples);
  const double sn = reference.samples.dot(interference.samples);

  // Projection onto span{reference, interference} via the 2x2 Gram system.
  const double det = ss * nn - sn * sn;
  if (det <= 1e-12 * ss * nn)
    throw DegenerateProjection("bss_metrics: reference and interference collinear");
  const double a = (nn * es - sn * en) / det;
  const double b = (ss * en - sn * es) / det;

  const Vector target = (es / ss) * reference.samples;
  const Vector proj = a * reference.samples + b * interference.samples;
  const Vector interf_err = proj - target;
  const Vector artif_err = estimate.samples - proj;

  const double p_target = target.squaredNorm();
  BssScores scores;
  scores.sdr_db =
      capped_ratio_db(p_target, (interf_err + artif_err).squaredNorm());
  scores.sir_db = capped_ratio_db(p_target, interf_err.squaredNorm());
  return scores;
}

EvalReport improvement_report(const TimeSignal& s, const TimeSignal& n,
                              const TimeSignal& x,
                              const std::vector<TimeSignal>& s_hats) {
  if (s_hats.empty()) throw Error("improvement_report: no estimates");
  const BssScores base = bss_metrics(x, s, n);

  EvalReport report;
  report.input_sdr_db = base.sdr_db;
  report.input_sir_db = base.sir_db;
  for (const TimeSignal& s_hat : s_hats) {
    const BssScores run = bss_metrics(s_hat, s, n);
    report.sdr_abs_db.push_back(run.sdr_db);
    report.sir_abs_db.push_back(run.sir_db);
    report.sdr_improvement_db.push_back(run.sdr_db - base.sdr_db);
    report.sir_improvement_db.push_back(run.sir_db - base.sir_db);
  }
  report.sdr_abs_median_db = median(report.sdr_abs_db);
  report.sir_abs_median_db = median(report.sir_abs_db);
  report.sdr_improvement_median_db = median(report.sdr_improvement_db);
  report.sir_improvement_median_db = median(report.sir_improvement_db);
  return report;
}

OpCount complexity_estimate(const std::string& method,
                            const std::map<std::string, double>& params) {
  OpCount out;
  out.method = method;
  if (method == "proposed") {
    const double i_o = require(params, "i_o", method);
    const double m = require(params, "M", method);
    const double f = require(params, "F", method);
    const double t = require(params, "T", method);
    const double k_n = require(params, "K_N", method);
    const double k_s = require(params, "K_S", method);
    const double n = require(params, "N", method);
    out.multiplications_per_second =
        i_o * m *
            (f * t * (6.0 + 5.0 * k_n + 3.0 * k_s) + k_n * (3.0 * t + 2.0 * f) +
             k_s * (t + f)) +
        2.0 * t * n * std::log2(n);
    out.additions_per_second =
        i_o * m *
            (f * t * (3.0 * k_n + 3.0 * k_s - 2.0) -
             t * (2.0 * k_n + 2.0 * k_s) - f * k_s) +
        4.0 * t * n * std::log2(n);
  } else if (method == "mss") {
    const double f = require(params, "F", method);
    const double t = require(params, "T", method);
    const double n = require(params, "N", method);
    out.multiplications_per_second = 13.0 * f * t + 2.0 * t * n * std::log2(n);
    out.additions_per_second = 10.0 * f * t + 4.0 * t * n * std::log2(n);
  } else if (method == "nlms") {
    const double l = require(params, "L", method);
    const double f_s = require(params, "f_s", method);
    out.multiplications_per_second = (3.0 * l + 1.0) * f_s;
    out.additions_per_second = 3.0 * l * f_s;
  } else {
    throw Error("complexity_estimate: unknown method " + method);
  }
  return out;
}

}  // namespace auscult
