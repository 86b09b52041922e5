#pragma once

#include <cstdint>

#include "synthbench/data/dataset.hpp"
#include "synthbench/gen_ai/loss_trace.hpp"
#include "synthbench/gen_ai/mode_normalizer.hpp"
#include "synthbench/nn/adam.hpp"

namespace synthbench {

struct GanOptions {
  int epochs = 300;
  Index batch = 512;
  Index noise_dim = 64;
  Index hidden = 128;
  /// Samples the discriminator judges jointly; batch must be a multiple.
  Index pac = 8;
  /// Gumbel-softmax temperature of the generator's discrete outputs.
  double tau = 0.2;
  nn::AdamConfig adam{2e-4, 0.5, 0.9, 1e-8, 1e-6};
  /// Rows to emit; 0 means as many as the input.
  Index rows = 0;
  /// Steps per epoch are ceil(rows / batch), capped here when > 0.
  Index max_steps_per_epoch = 0;
  ModeOptions modes;
  std::uint64_t seed = 0;
};

struct GanResult {
  Dataset data;
  LossTrace trace;  // discriminator, generator, condition loss per epoch
};

/// Conditional GAN over mode-normalized numerics and one-hot binaries with
/// training-by-sampling. Sampling alternates target conditions so that the
/// output is class-balanced; the emitted target equals the condition.
GanResult ctgan_fit_sample(const Dataset& d, const GanOptions& options);

/// The same GAN run on Gaussian-copula scores of the numeric columns; the
/// samples are mapped back through the inverse marginals.
GanResult copulagan_fit_sample(const Dataset& d, const GanOptions& options);

}  // namespace synthbench
