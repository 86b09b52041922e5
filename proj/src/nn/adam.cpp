#include "synthbench/nn/adam.hpp"

#include <cmath>

#include "synthbench/util/error.hpp"

namespace synthbench::nn {

void adam_step(OptimizerState& s, Eigen::Ref<Vector> params, const Eigen::Ref<const Vector>& grads) {
  if (params.size() != grads.size() || s.first_moment.size() != params.size())
    throw ArgumentError("adam_step: parameter, gradient and moment sizes differ");
  for (Index i = 0; i < grads.size(); ++i) {
    if (!std::isfinite(grads[i]))
      throw TrainingError("non-finite gradient at parameter " + std::to_string(i) + " on step " +
                          std::to_string(s.step + 1) + " (value " + std::to_string(grads[i]) + ")");
  }
  const auto& c = s.config;
  ++s.step;
  s.first_moment = c.beta1 * s.first_moment + (1.0 - c.beta1) * grads;
  s.second_moment = c.beta2 * s.second_moment + (1.0 - c.beta2) * grads.cwiseAbs2();
  const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(s.step));
  const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(s.step));
  const auto m_hat = s.first_moment.array() / bc1;
  const auto v_hat = s.second_moment.array() / bc2;
  if (c.weight_decay > 0.0) params *= 1.0 - c.lr * c.weight_decay;
  params.array() -= c.lr * m_hat / (v_hat.sqrt() + c.eps);
}

void Adam::step(Mlp& net, const Gradients& grads) {
  Vector p = net.parameters();
  adam_step(state_, p, grads.flatten());
  net.set_parameters(p);
}

}  // namespace synthbench::nn
