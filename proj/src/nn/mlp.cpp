#include "synthbench/nn/mlp.hpp"

#include <cmath>

#include "synthbench/util/error.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench::nn {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::ReLU: return "relu";
    case Activation::Tanh: return "tanh";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Softmax: return "softmax";
    case Activation::Identity: return "identity";
  }
  return "identity";
}

Activation parse_activation(std::string_view text) {
  if (text == "relu") return Activation::ReLU;
  if (text == "tanh") return Activation::Tanh;
  if (text == "sigmoid") return Activation::Sigmoid;
  if (text == "softmax") return Activation::Softmax;
  if (text == "identity") return Activation::Identity;
  throw ArgumentError("unknown activation '" + std::string(text) + "'");
}

Matrix softmax_rows(const Matrix& z) {
  Matrix e = (z.colwise() - z.rowwise().maxCoeff()).array().exp().matrix();
  return e.array().colwise() / e.rowwise().sum().array();
}

Matrix activate(Activation a, const Matrix& z) {
  switch (a) {
    case Activation::ReLU: return z.cwiseMax(0.0);
    case Activation::Tanh: return z.array().tanh().matrix();
    case Activation::Sigmoid: return (1.0 / (1.0 + (-z.array()).exp())).matrix();
    case Activation::Softmax: return softmax_rows(z);
    case Activation::Identity: return z;
  }
  return z;
}

Matrix activate_backward(Activation a, const Matrix& y, const Matrix& dy) {
  switch (a) {
    case Activation::ReLU: return (y.array() > 0.0).select(dy.array(), 0.0).matrix();
    case Activation::Tanh: return (dy.array() * (1.0 - y.array().square())).matrix();
    case Activation::Sigmoid: return (dy.array() * y.array() * (1.0 - y.array())).matrix();
    case Activation::Softmax: {
      const Eigen::VectorXd dot = (dy.array() * y.array()).rowwise().sum();
      return (y.array() * (dy.colwise() - dot).array()).matrix();
    }
    case Activation::Identity: return dy;
  }
  return dy;
}

Vector Gradients::flatten() const {
  Index n = 0;
  for (std::size_t k = 0; k < weight.size(); ++k) n += weight[k].size() + bias[k].size();
  Vector out(n);
  Index at = 0;
  for (std::size_t k = 0; k < weight.size(); ++k) {
    out.segment(at, weight[k].size()) = weight[k].reshaped();
    at += weight[k].size();
    out.segment(at, bias[k].size()) = bias[k].transpose();
    at += bias[k].size();
  }
  return out;
}

Mlp::Mlp(const MlpSpec& spec) : seed_(spec.seed) {
  if (spec.widths.size() != spec.activations.size() + 1 || spec.activations.empty())
    throw ArgumentError("an MLP with " + std::to_string(spec.activations.size()) + " layers needs " +
                        std::to_string(spec.activations.size() + 1) + " widths");
  Rng rng(spec.seed);
  for (std::size_t k = 0; k < spec.activations.size(); ++k) {
    const Index in = spec.widths[k];
    const Index out = spec.widths[k + 1];
    if (in < 1 || out < 1) throw ArgumentError("layer widths must be positive");
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    Dense layer;
    layer.weight.resize(in, out);
    for (Index c = 0; c < out; ++c)
      for (Index r = 0; r < in; ++r) layer.weight(r, c) = (2.0 * rng.uniform() - 1.0) * limit;
    layer.bias = RowVector::Zero(out);
    layer.activation = spec.activations[k];
    layers_.push_back(std::move(layer));
  }
}

ForwardCache Mlp::forward(const Matrix& batch) const {
  if (layers_.empty()) throw ArgumentError("forward on an empty network");
  if (batch.cols() != input_width())
    throw ArgumentError("batch has " + std::to_string(batch.cols()) + " columns, network expects " +
                        std::to_string(input_width()));
  ForwardCache cache;
  cache.version = version_;
  cache.inputs.reserve(layers_.size());
  cache.outputs.reserve(layers_.size());
  const Matrix* x = &batch;
  for (const auto& layer : layers_) {
    cache.inputs.push_back(*x);
    Matrix z = *x * layer.weight;
    z.rowwise() += layer.bias;
    cache.outputs.push_back(activate(layer.activation, z));
    x = &cache.outputs.back();
  }
  return cache;
}

Gradients Mlp::backward(const ForwardCache& cache, const Matrix& loss_grad) const {
  if (cache.version != version_) throw TrainingError("stale forward cache: parameters changed since forward()");
  if (cache.outputs.size() != layers_.size()) throw TrainingError("forward cache does not belong to this network");
  if (loss_grad.rows() != cache.output().rows() || loss_grad.cols() != cache.output().cols())
    throw ArgumentError("loss gradient shape does not match the network output");
  Gradients g;
  g.weight.resize(layers_.size());
  g.bias.resize(layers_.size());
  Matrix d = loss_grad;
  for (std::size_t k = layers_.size(); k-- > 0;) {
    const Matrix dz = activate_backward(layers_[k].activation, cache.outputs[k], d);
    g.weight[k].noalias() = cache.inputs[k].transpose() * dz;
    g.bias[k] = dz.colwise().sum();
    d.noalias() = dz * layers_[k].weight.transpose();
  }
  g.input = std::move(d);
  return g;
}

Index Mlp::parameter_count() const {
  Index n = 0;
  for (const auto& l : layers_) n += l.weight.size() + l.bias.size();
  return n;
}

Vector Mlp::parameters() const {
  Vector out(parameter_count());
  Index at = 0;
  for (const auto& l : layers_) {
    out.segment(at, l.weight.size()) = l.weight.reshaped();
    at += l.weight.size();
    out.segment(at, l.bias.size()) = l.bias.transpose();
    at += l.bias.size();
  }
  return out;
}

void Mlp::set_parameters(const Eigen::Ref<const Vector>& flat) {
  if (flat.size() != parameter_count())
    throw ArgumentError("expected " + std::to_string(parameter_count()) + " parameters, got " +
                        std::to_string(flat.size()));
  Index at = 0;
  for (auto& l : layers_) {
    l.weight.reshaped() = flat.segment(at, l.weight.size());
    at += l.weight.size();
    l.bias = flat.segment(at, l.bias.size()).transpose();
    at += l.bias.size();
  }
  ++version_;
}

Dense& Mlp::layer(std::size_t k) {
  ++version_;
  return layers_.at(k);
}

}  // namespace synthbench::nn
