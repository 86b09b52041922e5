#pragma once

#include <cstdint>
#include <array>
#include <span>
#include <utility>
#include <vector>

#include "synthbench/data/dataset.hpp"

namespace synthbench {

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 42;
  bool stratified = true;
};

/// Disjoint, exhaustive (train, test) partition. When stratified, each
/// class is shuffled on its own and contributes round(fraction * n_c) rows
/// to train, clamped so both sides keep at least one row of every class.
/// Rows keep their original relative order within each partition.
std::pair<Dataset, Dataset> stratified_split(const Dataset& d, const SplitSpec& spec);

/// `n` rows with per-class counts allotted by largest remainder, so class
/// shares match the parent to within one row per class.
Dataset stratified_subsample(const Dataset& d, Index n, std::uint64_t seed);

/// Row positions of each class, in table order.
std::array<std::vector<Index>, 2> rows_by_class(const Dataset& d);

/// Splits `total` into integer parts proportional to `weights`, largest
/// fractional remainders rounded up first (ties by lower position).
std::vector<Index> largest_remainder(std::span<const double> weights, Index total);

}  // namespace synthbench
