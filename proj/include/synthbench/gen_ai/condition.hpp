#pragma once

#include <array>
#include <vector>

#include "synthbench/data/dataset.hpp"
#include "synthbench/gen_ai/tabular_codec.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench {

/// Conditional vector over the Binary columns: one 2-wide block per column,
/// exactly one bit set in the selected column's block.
struct Condition {
  Index block = 0;  // position in TabularCodec::discrete()
  int value = 0;
};

/// Training-by-sampling: pick a Binary column uniformly, a value with
/// probability proportional to log(1 + frequency), then a real row holding
/// that value.
class ConditionSampler {
 public:
  ConditionSampler(const Dataset& d, const TabularCodec& codec);

  Index width() const { return 2 * static_cast<Index>(blocks_.size()); }
  Index blocks() const { return static_cast<Index>(blocks_.size()); }
  /// Block position of dataset column `column`; throws when it is not Binary.
  Index block_of(Index column) const;

  Condition draw(Rng& rng) const;
  Index matching_row(const Condition& c, Rng& rng) const;
  /// Zeroes `out` (width()) and sets the condition's bit.
  void write(const Condition& c, Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> out) const;

  /// Offset of the condition's block inside the codec's encoded row.
  Index codec_offset(const Condition& c) const { return blocks_.at(static_cast<std::size_t>(c.block)).offset; }

 private:
  std::vector<DiscreteBlock> blocks_;
  std::vector<std::array<std::vector<Index>, 2>> rows_;
  std::vector<std::array<double, 2>> probs_;
};

}  // namespace synthbench
