// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "auscult/mixsim.hpp"

#include <cmath>

namespace auscult {

TimeSignal apply_delay(const TimeSignal& sig, double delay_ms) {
  if (delay_ms < 0.0) throw Error("apply_delay: negative delay");
  const Index shift =
      Index(std::lround(delay_ms * sig.sample_rate / 1000.0));
  if (shift == 0) return sig;
  Vector out = Vector::Zero(sig.size());
  if (shift < sig.size())
    out.tail(sig.size() - shift) = sig.samples.head(sig.size() - shift);
  return {std::move(out), sig.sample_rate};
}

TimeSignal convolve(const TimeSignal& sig, const TimeSignal& ir) {
  if (sig.sample_rate != ir.sample_rate)
    throw RateMismatch("convolve: sample rates differ");
  Vector out = Vector::Zero(sig.size());
  for (Index i = 0; i < sig.size(); ++i) {
    const Index kmax = std::min<Index>(ir.size() - 1, i);
    double acc = 0.0;
    for (Index k = 0; k <= kmax; ++k) acc += ir.samples[k] * sig.samples[i - k];
    out[i] = acc;
  }
  return {std::move(out), sig.sample_rate};
}

MixResult mix_ideal(const TimeSignal& s, const TimeSignal& n_a, double snr_db,
                    double delay_ms) {
  if (s.sample_rate != n_a.sample_rate)
    throw RateMismatch("mix_ideal: sample rates differ");
  if (s.size() != n_a.size()) throw LengthMismatch("mix_ideal: lengths differ");
  const double p_s = s.power();
  const double p_n = n_a.power();
  if (p_s <= 0.0 || p_n <= 0.0)
    throw ZeroEnergyInput("mix_ideal: zero-energy input");

  const double gain = std::sqrt(p_s / (p_n * std::pow(10.0, snr_db / 10.0)));
  MixResult r;
  r.noise = {gain * n_a.samples, s.sample_rate};
  r.internal = {s.samples + r.noise.samples, s.sample_rate};
  r.external = apply_delay(n_a, delay_ms);
  r.alpha = gain;
  r.snr_init_db = 10.0 * std::log10(p_s / p_n);
  return r;
}

MixResult mix_real(const MixtureSpec& spec) {
  if (!spec.room_ir || !spec.body_ir)
    throw MissingImpulseResponse("mix_real: both impulse responses required");
  const TimeSignal& s = spec.biomedical;
  if (s.sample_rate != spec.ambient.sample_rate)
    throw RateMismatch("mix_real: sample rates differ");
  if (s.size() != spec.ambient.size())
    throw LengthMismatch("mix_real: lengths differ");
  if (s.power() <= 0.0 || spec.ambient.power() <= 0.0)
    throw ZeroEnergyInput("mix_real: zero-energy input");

  MixResult r;
  TimeSignal y = convolve(spec.ambient, *spec.room_ir);
  r.noise_rb = convolve(y, *spec.body_ir);
  r.noise_mix = {r.noise_rb.samples + y.samples, s.sample_rate};
  const double p_mix = r.noise_mix.power();
  if (p_mix <= 0.0) throw ZeroEnergyInput("mix_real: silent noise chain");

  r.snr_init_db = 10.0 * std::log10(s.power() / p_mix);
  r.alpha = std::pow(10.0, (r.snr_init_db - spec.target_snr_db) / 20.0);
  r.noise = {r.alpha * r.noise_mix.samples, s.sample_rate};
  r.internal = {s.samples + r.noise.samples, s.sample_rate};
  r.external = apply_delay(y, spec.delay_ms);
  return r;
}

}  // namespace auscult
