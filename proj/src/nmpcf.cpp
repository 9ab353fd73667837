// Copyright (c) 2026 the auscult authors.
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "auscult/nmpcf.hpp"

#include <cmath>
#include <random>

namespace auscult {

namespace {

void check_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch(std::string(what) + ": grid shapes differ");
}

void fill_uniform(Matrix& m, std::mt19937_64& gen, double eps_floor) {
  // Hand-rolled mapping to (eps_floor, 1]; keeps the stream stable across
  // standard-library implementations.
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      const double u = double(gen() >> 11) * 0x1p-53;  // [0, 1)
      m(i, j) = 1.0 - u * (1.0 - eps_floor);
    }
}

// X_hat / Y_hat with floored denominators, as used inside the update ratios.
Matrix ratio(const Matrix& z, const Matrix& z_hat, double eps_floor) {
  return z.array() / z_hat.array().max(eps_floor);
}

// Basis update: U <- U .* num ./ (ones * V^T), where the denominator is the
// row-sum of the activations broadcast down each column.
void scale_basis(Matrix& basis, const Matrix& num, const Vector& act_row_sums,
                 double eps_floor) {
  const Eigen::ArrayXd den = act_row_sums.array().max(eps_floor);
  basis = ((basis.array() * num.array()).rowwise() / den.transpose())
              .max(eps_floor)
              .matrix();
}

// Activation update: V <- V .* num ./ (U^T * ones), column-sum of the basis
// broadcast along each row.
void scale_activations(Matrix& act, const Matrix& num,
                       const Vector& basis_col_sums, double eps_floor) {
  const Eigen::ArrayXd den = basis_col_sums.array().max(eps_floor);
  act = ((act.array() * num.array()).colwise() / den).max(eps_floor).matrix();
}

// One sweep in place. Reconstructions are refreshed before each matrix's
// update so later updates see the earlier ones.
void sweep_in_place(const Matrix& x, const Matrix& y, NmpcfModel& m,
                    double lambda, double eps_floor) {
  // U_N: combines both channels, weighted by lambda.
  {
    const Matrix rx = ratio(x, m.internal_estimate(), eps_floor);
    const Matrix ry = ratio(y, m.external_estimate(), eps_floor);
    const Matrix num = rx * m.noise_activations.transpose() +
                       lambda * ry * m.external_activations.transpose();
    const Vector den = m.noise_activations.rowwise().sum() +
                       lambda * m.external_activations.rowwise().sum();
    scale_basis(m.noise_basis, num, den, eps_floor);
  }
  // U_S
  {
    const Matrix rx = ratio(x, m.internal_estimate(), eps_floor);
    scale_basis(m.biomedical_basis,
                rx * m.biomedical_activations.transpose(),
                m.biomedical_activations.rowwise().sum(), eps_floor);
  }
  // V_N
  {
    const Matrix rx = ratio(x, m.internal_estimate(), eps_floor);
    scale_activations(m.noise_activations, m.noise_basis.transpose() * rx,
                      m.noise_basis.colwise().sum().transpose(), eps_floor);
  }
  // V_S
  {
    const Matrix rx = ratio(x, m.internal_estimate(), eps_floor);
    scale_activations(m.biomedical_activations,
                      m.biomedical_basis.transpose() * rx,
                      m.biomedical_basis.colwise().sum().transpose(),
                      eps_floor);
  }
  // H_N: lambda cancels in the ratio, so it never appears here.
  {
    const Matrix ry = ratio(y, m.external_estimate(), eps_floor);
    scale_activations(m.external_activations, m.noise_basis.transpose() * ry,
                      m.noise_basis.colwise().sum().transpose(), eps_floor);
  }
}

}  // namespace

NmpcfModel init_model(Index num_bins, Index num_frames,
                      const DenoiseConfig& cfg, int run_index, int stage) {
  if (num_bins < 1 || num_frames < 1)
    throw Error("init_model: degenerate grid");
  std::seed_seq seq{cfg.rng_seed, std::uint64_t(run_index),
                    std::uint64_t(stage)};
  std::mt19937_64 gen(seq);

  NmpcfModel m;
  m.noise_basis.resize(num_bins, cfg.noise_rank);
  m.biomedical_basis.resize(num_bins, cfg.biomedical_rank);
  m.noise_activations.resize(cfg.noise_rank, num_frames);
  m.biomedical_activations.resize(cfg.biomedical_rank, num_frames);
  m.external_activations.resize(cfg.noise_rank, num_frames);
  fill_uniform(m.noise_basis, gen, cfg.eps_floor);
  fill_uniform(m.biomedical_basis, gen, cfg.eps_floor);
  fill_uniform(m.noise_activations, gen, cfg.eps_floor);
  fill_uniform(m.biomedical_activations, gen, cfg.eps_floor);
  fill_uniform(m.external_activations, gen, cfg.eps_floor);
  return m;
}

double kl_divergence(const Matrix& z, const Matrix& z_hat) {
  check_same_shape(z, z_hat, "kl_divergence");
  double sum = 0.0;
  for (Index j = 0; j < z.cols(); ++j)
    for (Index i = 0; i < z.rows(); ++i) {
      const double zv = z(i, j);
      const double zh = std::max(z_hat(i, j), kEpsFloor);
      sum += (zv > 0.0 ? zv * std::log(zv / zh) - zv : 0.0) + zh;
    }
  return sum;
}

double kl_divergence(const MagSpectrogram& z, const MagSpectrogram& z_hat) {
  return kl_divergence(z.values, z_hat.values);
}

double objective(const MagSpectrogram& x, const MagSpectrogram& y,
                 const NmpcfModel& model, double lambda) {
  double gamma = kl_divergence(x.values, model.internal_estimate());
  if (lambda != 0.0)
    gamma += lambda * kl_divergence(y.values, model.external_estimate());
  return gamma;
}

NmpcfModel update_step(const MagSpectrogram& x, const MagSpectrogram& y,
                       const NmpcfModel& model, double lambda,
                       double eps_floor) {
  check_same_shape(x.values, y.values, "update_step");
  if (model.num_bins() != x.values.rows() ||
      model.num_frames() != x.values.cols())
    throw ShapeMismatch("update_step: model does not match grids");
  NmpcfModel out = model;
  sweep_in_place(x.values, y.values, out, lambda, eps_floor);
  return out;
}

NmpcfModel factorize(const MagSpectrogram& x, const MagSpectrogram& y,
                     const DenoiseConfig& cfg, int run_index, int stage,
                     std::vector<double>* objective_history) {
  check_same_shape(x.values, y.values, "factorize");
  NmpcfModel model =
      init_model(x.values.rows(), x.values.cols(), cfg, run_index, stage);
  if (objective_history) {
    objective_history->clear();
    objective_history->push_back(objective(x, y, model, cfg.lambda));
  }
  for (int it = 0; it < cfg.max_iter; ++it) {
    sweep_in_place(x.values, y.values, model, cfg.lambda, cfg.eps_floor);
    if (objective_history)
      objective_history->push_back(objective(x, y, model, cfg.lambda));
  }
  return model;
}

std::pair<MagSpectrogram, MagSpectrogram> separate(const MagSpectrogram& x,
                                                   const NmpcfModel& model) {
  if (model.num_bins() != x.values.rows() ||
      model.num_frames() != x.values.cols())
    throw ShapeMismatch("separate: model does not match grid");
  MagSpectrogram xs = x, xn = x;
  xs.values = model.biomedical_basis * model.biomedical_activations;
  xn.values = model.noise_basis * model.noise_activations;
  xs.norm_factor = 1.0;
  xn.norm_factor = 1.0;
  return {std::move(xs), std::move(xn)};
}

}  // namespace auscult
