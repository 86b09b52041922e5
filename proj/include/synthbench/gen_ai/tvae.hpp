#pragma once

#include <cstdint>

#include "synthbench/data/dataset.hpp"
#include "synthbench/gen_ai/loss_trace.hpp"
#include "synthbench/gen_ai/mode_normalizer.hpp"
#include "synthbench/nn/adam.hpp"

namespace synthbench {

struct VaeOptions {
  int epochs = 300;
  Index batch = 512;
  Index latent_dim = 16;
  Index hidden = 128;
  nn::AdamConfig adam{1e-3, 0.9, 0.999, 1e-8, 1e-5};
  /// Rows to emit; 0 means as many as the input.
  Index rows = 0;
  Index max_steps_per_epoch = 0;
  ModeOptions modes;
  std::uint64_t seed = 0;
};

struct VaeResult {
  Dataset data;
  LossTrace trace;  // reconstruction, kl, loss per epoch
};

/// Variational autoencoder over mode-normalized numerics and one-hot
/// binaries. Scalars use a Gaussian likelihood with a learned per-column
/// scale in [0.01, 1]; softmax groups use cross-entropy. Sampling decodes
/// standard-normal latents, adds the learned scale noise to scalars and
/// takes the most likely mode and bit.
VaeResult tvae_fit_sample(const Dataset& d, const VaeOptions& options);

}  // namespace synthbench
