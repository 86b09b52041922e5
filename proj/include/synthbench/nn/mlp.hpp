#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace synthbench::nn {

using Eigen::Index;
using Matrix = Eigen::MatrixXd;
using RowVector = Eigen::RowVectorXd;
using Vector = Eigen::VectorXd;

enum class Activation { ReLU, Tanh, Sigmoid, Softmax, Identity };

std::string_view to_string(Activation a);
Activation parse_activation(std::string_view text);

/// widths has one more entry than activations: widths[0] is the input
/// width, widths[k+1] the output width of layer k.
struct MlpSpec {
  std::vector<Index> widths;
  std::vector<Activation> activations;
  std::uint64_t seed = 0;
};

/// Applies `a` elementwise (Softmax: row-wise).
Matrix activate(Activation a, const Matrix& z);
/// Gradient w.r.t. the pre-activation given the activation output `y` and
/// the gradient `dy` w.r.t. that output.
Matrix activate_backward(Activation a, const Matrix& y, const Matrix& dy);

/// Row-wise softmax with the max subtracted for stability.
Matrix softmax_rows(const Matrix& z);

struct Dense {
  Matrix weight;  // in x out
  RowVector bias;  // 1 x out
  Activation activation = Activation::Identity;
};

/// Intermediates of one forward pass, tied to the parameter version it was
/// computed with.
struct ForwardCache {
  std::vector<Matrix> inputs;   // input of each layer
  std::vector<Matrix> outputs;  // post-activation output of each layer
  std::uint64_t version = 0;

  const Matrix& output() const { return outputs.back(); }
};

struct Gradients {
  std::vector<Matrix> weight;
  std::vector<RowVector> bias;
  Matrix input;  // gradient w.r.t. the batch

  /// Concatenated in the same order as Mlp::parameters().
  Vector flatten() const;
};

/// Fully connected network Y = act(X W + b) per layer, double precision.
class Mlp {
 public:
  Mlp() = default;
  /// Weights uniform in +-sqrt(6 / (fan_in + fan_out)), biases zero.
  explicit Mlp(const MlpSpec& spec);

  Index input_width() const { return layers_.front().weight.rows(); }
  Index output_width() const { return layers_.back().weight.cols(); }
  const std::vector<Dense>& layers() const { return layers_; }
  std::uint64_t seed() const { return seed_; }

  /// Throws ArgumentError when the batch width does not match.
  ForwardCache forward(const Matrix& batch) const;
  Matrix predict(const Matrix& batch) const { return forward(batch).output(); }

  /// Reverse-mode gradients of <loss_grad, output>. Throws TrainingError
  /// when the cache predates the last parameter update.
  Gradients backward(const ForwardCache& cache, const Matrix& loss_grad) const;

  Index parameter_count() const;
  Vector parameters() const;
  void set_parameters(const Eigen::Ref<const Vector>& flat);
  /// Direct layer access; bumps the parameter version.
  Dense& layer(std::size_t k);

 private:
  std::vector<Dense> layers_;
  std::uint64_t seed_ = 0;
  std::uint64_t version_ = 1;
};

}  // namespace synthbench::nn
