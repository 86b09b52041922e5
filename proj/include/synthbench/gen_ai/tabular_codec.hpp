#pragma once

#include <vector>

#include "synthbench/data/dataset.hpp"
#include "synthbench/gen_ai/mode_normalizer.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench {

/// A contiguous block of the encoded row: a single normalized scalar or a
/// softmax group (mode indicator or binary one-hot).
struct OutputSpan {
  enum class Kind { Scalar, Softmax };
  Index start = 0;
  Index width = 1;
  Kind kind = Kind::Scalar;
};

/// Encoded position of one Binary column: a 2-wide one-hot block.
struct DiscreteBlock {
  Index column = 0;  // dataset column
  Index offset = 0;  // start inside the encoded row
};

/// Row encoding shared by the GAN and VAE generators. Numeric columns
/// become [alpha, one-hot mode] through a ModeNormalizer; Binary columns a
/// 2-way one-hot. Categorical columns must be encoded beforehand.
class TabularCodec {
 public:
  static TabularCodec fit(const Dataset& d, const ModeOptions& options);

  Index width() const { return width_; }
  const std::vector<OutputSpan>& spans() const { return spans_; }
  const std::vector<DiscreteBlock>& discrete() const { return discrete_; }
  const ModeNormalizer& normalizer(Index column) const;

  Eigen::MatrixXd encode(const Dataset& d) const;

  /// Scalars pass through, softmax groups are normalized row-wise.
  Eigen::MatrixXd activate(const Eigen::MatrixXd& logits) const;
  /// Gumbel-softmax: each group becomes softmax((logits + g) / tau) with
  /// standard Gumbel noise g, a relaxed draw from softmax(logits).
  Eigen::MatrixXd activate_gumbel(const Eigen::MatrixXd& logits, double tau, Rng& rng) const;
  /// Gradient w.r.t. the logits from the gradient w.r.t. the activated
  /// output; `tau` is the temperature the output was produced with.
  Eigen::MatrixXd activate_backward(const Eigen::MatrixXd& activated, const Eigen::MatrixXd& grad,
                                    double tau = 1.0) const;

  /// Dataset values from activated outputs: argmax picks the mode / bit.
  /// With `clamp`, numeric values are limited to the fitted observed range.
  Eigen::MatrixXd decode(const Eigen::MatrixXd& activated, bool clamp) const;

 private:
  struct Numeric {
    Index column;
    Index offset;
    ModeNormalizer modes;
    double min;
    double max;
  };
  Index columns_ = 0;
  Index width_ = 0;
  std::vector<Numeric> numeric_;
  std::vector<DiscreteBlock> discrete_;
  std::vector<OutputSpan> spans_;
};

}  // namespace synthbench
