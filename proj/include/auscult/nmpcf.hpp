// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "auscult/spectral.hpp"
#include "auscult/types.hpp"

namespace auscult {

/// Entry floor applied to factor matrices and to reconstruction denominators.
constexpr double kEpsFloor = 1e-12;

/// All tunables of the denoiser. Defaults are the optimal operating point:
/// (K_S, K_N, lambda, M, i_o) = (16, 256, 10, 50, 3) at 8 kHz with N = 512,
/// 50% overlap and a 2N-point DFT.
struct DenoiseConfig {
  int window_len = 512;
  double overlap = 0.5;
  int fft_len = 1024;
  int sample_rate = 8000;
  int noise_rank = 256;       // K_N
  int biomedical_rank = 16;   // K_S
  double lambda = 10.0;
  int max_iter = 50;          // M
  int incremental_iters = 3;  // i_o
  double eps_floor = kEpsFloor;
  std::uint64_t rng_seed = 0;
  int num_runs = 3;
};

/// The five factor matrices of the shared-basis decomposition:
/// X ~ U_N V_N + U_S V_S and Y ~ U_N H_N, with U_N shared.
struct NmpcfModel {
  Matrix noise_basis;              // U_N, F x K_N
  Matrix biomedical_basis;         // U_S, F x K_S
  Matrix noise_activations;        // V_N, K_N x T
  Matrix biomedical_activations;   // V_S, K_S x T
  Matrix external_activations;     // H_N, K_N x T

  Index num_bins() const { return noise_basis.rows(); }
  Index num_frames() const { return noise_activations.cols(); }

  Matrix internal_estimate() const {  // X_hat
    return noise_basis * noise_activations +
           biomedical_basis * biomedical_activations;
  }
  Matrix external_estimate() const {  // Y_hat
    return noise_basis * external_activations;
  }
};

/// Random non-negative initialization, i.i.d. uniform on (eps_floor, 1].
/// Deterministic in (cfg.rng_seed, run_index, stage).
NmpcfModel init_model(Index num_bins, Index num_frames,
                      const DenoiseConfig& cfg, int run_index, int stage = 0);

/// Generalized Kullback-Leibler divergence, summed over the grid, with the
/// convention 0 log 0 = 0.
double kl_divergence(const Matrix& z, const Matrix& z_hat);
double kl_divergence(const MagSpectrogram& z, const MagSpectrogram& z_hat);

/// Joint objective: D_KL(X | X_hat) + lambda * D_KL(Y | Y_hat).
double objective(const MagSpectrogram& x, const MagSpectrogram& y,
                 const NmpcfModel& model, double lambda);

/// One full multiplicative-update sweep over U_N, U_S, V_N, V_S, H_N in that
/// order, refreshing the reconstructions before each matrix's update. Every
/// output entry is floored at eps_floor.
NmpcfModel update_step(const MagSpectrogram& x, const MagSpectrogram& y,
                       const NmpcfModel& model, double lambda,
                       double eps_floor = kEpsFloor);

/// Initialize then run cfg.max_iter sweeps. Inputs must be normalized
/// (mean 1). When objective_history is given it receives the objective after
/// each sweep, prefixed by the initial value (max_iter + 1 entries).
NmpcfModel factorize(const MagSpectrogram& x, const MagSpectrogram& y,
                     const DenoiseConfig& cfg, int run_index, int stage = 0,
                     std::vector<double>* objective_history = nullptr);

/// Reconstruction split: (X_hat_S, X_hat_N) = (U_S V_S, U_N V_N), still in
/// normalized scale.
std::pair<MagSpectrogram, MagSpectrogram> separate(const MagSpectrogram& x,
                                                   const NmpcfModel& model);

}  // namespace auscult
