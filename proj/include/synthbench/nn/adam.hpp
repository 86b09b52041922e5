#pragma once

#include <cstdint>

#include "synthbench/nn/mlp.hpp"

namespace synthbench::nn {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;
};

/// Moment estimates for one flat parameter vector.
struct OptimizerState {
  AdamConfig config;
  std::int64_t step = 0;
  Vector first_moment;
  Vector second_moment;

  OptimizerState() = default;
  OptimizerState(AdamConfig c, Index size)
      : config(c), first_moment(Vector::Zero(size)), second_moment(Vector::Zero(size)) {}
};

/// One bias-corrected Adam update of `params` in place. A NaN or infinite
/// gradient entry aborts with TrainingError naming its position and step.
void adam_step(OptimizerState& state, Eigen::Ref<Vector> params, const Eigen::Ref<const Vector>& grads);

/// Convenience wrapper: owns the optimizer state for one network.
class Adam {
 public:
  Adam(const Mlp& net, AdamConfig config) : state_(config, net.parameter_count()) {}

  void step(Mlp& net, const Gradients& grads);
  const OptimizerState& state() const { return state_; }

 private:
  OptimizerState state_;
};

}  // namespace synthbench::nn
