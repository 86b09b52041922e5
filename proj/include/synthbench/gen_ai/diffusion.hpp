#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "synthbench/data/dataset.hpp"
#include "synthbench/gen_ai/loss_trace.hpp"
#include "synthbench/nn/adam.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench {

/// Linear beta schedule from 1e-4 to 0.02, both scaled by 1000 / T so that
/// short schedules still destroy the signal.
class DiffusionSchedule {
 public:
  explicit DiffusionSchedule(int steps);

  int steps() const { return static_cast<int>(betas_.size()); }
  /// 1-based step index t in [1, T].
  double beta(int t) const { return betas_.at(static_cast<std::size_t>(t - 1)); }
  double alpha(int t) const { return 1.0 - beta(t); }
  double alpha_bar(int t) const { return alpha_bars_.at(static_cast<std::size_t>(t - 1)); }
  /// Posterior variance of q(x_{t-1} | x_t, x_0).
  double posterior_variance(int t) const;

 private:
  std::vector<double> betas_;
  std::vector<double> alpha_bars_;
};

/// Predicts the noise in a batch x_t at step t.
using NoisePredictor = std::function<Eigen::MatrixXd(const Eigen::MatrixXd& x_t, int t)>;

/// Ancestral sampling from x_T down to x_0. No noise is added at t = 1.
Eigen::MatrixXd reverse_sample(const DiffusionSchedule& schedule, Eigen::MatrixXd x,
                               const NoisePredictor& predict, Rng& rng);

/// Sinusoidal embedding of step t (width must be even).
Eigen::RowVectorXd time_embedding(int t, Index width);

struct DiffusionOptions {
  int steps = 100;
  int epochs = 1000;
  Index batch = 512;
  Index hidden = 256;
  Index embedding = 32;
  nn::AdamConfig adam{1e-3, 0.9, 0.999, 1e-8, 0.0};
  /// Rows to emit; 0 means as many as the input.
  Index rows = 0;
  Index max_steps_per_epoch = 0;
  std::uint64_t seed = 0;
};

struct DiffusionResult {
  Dataset data;
  LossTrace trace;  // noise-prediction mse per epoch
};

/// Gaussian diffusion on standardized columns (binaries mapped to +-1)
/// with an MLP noise predictor. Samples are de-standardized; binaries are
/// read off by sign. Numerics are not clamped.
DiffusionResult diffusion_fit_sample(const Dataset& d, const DiffusionOptions& options);

}  // namespace synthbench
