#include "synthbench/data/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "synthbench/util/error.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench {

std::array<std::vector<Index>, 2> rows_by_class(const Dataset& d) {
  const auto y = d.col(d.target());
  std::array<std::vector<Index>, 2> out;
  for (Index i = 0; i < d.rows(); ++i) {
    if (y[i] == 0.0) {
      out[0].push_back(i);
    } else if (y[i] == 1.0) {
      out[1].push_back(i);
    } else {
      throw DataError("target value at row " + std::to_string(i) + " is not binary");
    }
  }
  return out;
}

std::vector<Index> largest_remainder(std::span<const double> weights, Index total) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (weights.empty() || !(sum > 0.0)) throw ArgumentError("largest_remainder: weights must have a positive sum");
  std::vector<Index> out(weights.size());
  std::vector<double> rem(weights.size());
  Index assigned = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double exact = static_cast<double>(total) * weights[k] / sum;
    out[k] = static_cast<Index>(std::floor(exact));
    rem[k] = exact - static_cast<double>(out[k]);
    assigned += out[k];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t r = 0; assigned < total; ++r, ++assigned) ++out[order[r % order.size()]];
  return out;
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& d, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw ArgumentError("train_fraction must lie in (0, 1)");
  Rng rng(spec.seed);
  std::vector<Index> train;
  std::vector<Index> test;
  auto take = [&](std::vector<Index> rows, Index lo) {
    rng.shuffle(std::span<Index>(rows));
    const auto n = static_cast<Index>(rows.size());
    auto n_train = static_cast<Index>(std::llround(spec.train_fraction * static_cast<double>(n)));
    n_train = std::clamp(n_train, lo, n - lo);
    train.insert(train.end(), rows.begin(), rows.begin() + n_train);
    test.insert(test.end(), rows.begin() + n_train, rows.end());
  };
  if (spec.stratified) {
    auto classes = rows_by_class(d);
    for (int c = 0; c < 2; ++c) {
      if (classes[c].size() < 2)
        throw DataError("class " + std::to_string(c) + " has " + std::to_string(classes[c].size()) +
                        " rows; a stratified split needs at least 2");
      take(std::move(classes[c]), 1);
    }
  } else {
    if (d.rows() < 2) throw DataError("split needs at least 2 rows");
    std::vector<Index> all(static_cast<std::size_t>(d.rows()));
    std::iota(all.begin(), all.end(), Index{0});
    take(std::move(all), 1);
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {d.select_rows(train), d.select_rows(test)};
}

Dataset stratified_subsample(const Dataset& d, Index n, std::uint64_t seed) {
  if (n > d.rows() || n < 0)
    throw ArgumentError("subsample of " + std::to_string(n) + " rows requested from " + std::to_string(d.rows()));
  auto classes = rows_by_class(d);
  const std::array<double, 2> w{static_cast<double>(classes[0].size()), static_cast<double>(classes[1].size())};
  const auto counts = largest_remainder(w, n);
  Rng rng(seed);
  std::vector<Index> keep;
  for (int c = 0; c < 2; ++c) {
    rng.shuffle(std::span<Index>(classes[c]));
    keep.insert(keep.end(), classes[c].begin(), classes[c].begin() + counts[c]);
  }
  std::sort(keep.begin(), keep.end());
  return d.select_rows(keep);
}

}  // namespace synthbench
