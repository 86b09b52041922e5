#include "synthbench/gen_ai/condition.hpp"

#include <cmath>

#include "synthbench/util/error.hpp"

namespace synthbench {

ConditionSampler::ConditionSampler(const Dataset& d, const TabularCodec& codec) : blocks_(codec.discrete()) {
  for (const auto& b : blocks_) {
    std::array<std::vector<Index>, 2> rows;
    for (Index i = 0; i < d.rows(); ++i) rows[d.values()(i, b.column) > 0.5 ? 1 : 0].push_back(i);
    const double l0 = std::log1p(static_cast<double>(rows[0].size()));
    const double l1 = std::log1p(static_cast<double>(rows[1].size()));
    probs_.push_back({l0 / (l0 + l1), l1 / (l0 + l1)});
    rows_.push_back(std::move(rows));
  }
}

Index ConditionSampler::block_of(Index column) const {
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if (blocks_[k].column == column) return static_cast<Index>(k);
  throw ArgumentError("column " + std::to_string(column) + " is not a conditioning column");
}

Condition ConditionSampler::draw(Rng& rng) const {
  if (blocks_.empty()) throw DataError("no binary column to condition on");
  Condition c;
  c.block = static_cast<Index>(rng.index(blocks_.size()));
  c.value = rng.uniform() < probs_[static_cast<std::size_t>(c.block)][0] ? 0 : 1;
  return c;
}

Index ConditionSampler::matching_row(const Condition& c, Rng& rng) const {
  const auto& rows = rows_.at(static_cast<std::size_t>(c.block))[static_cast<std::size_t>(c.value)];
  if (rows.empty()) throw DataError("no real row matches the requested condition");
  return rows[rng.index(rows.size())];
}

void ConditionSampler::write(const Condition& c, Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> out) const {
  out.setZero();
  out[2 * c.block + c.value] = 1.0;
}

}  // namespace synthbench
