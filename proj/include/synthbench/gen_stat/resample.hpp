#pragma once

#include <cstdint>

#include "synthbench/data/dataset.hpp"
#include "synthbench/gen_stat/gmm.hpp"

namespace synthbench {

/// Statistical balancers. Each returns a complete class-balanced table with
/// the input schema: the original rows (or their replacement) followed by
/// generated rows. Values are not clamped or rounded.

/// Random oversampling: minority rows drawn with replacement until the
/// classes are equal.
Dataset ros_balance(const Dataset& d, std::uint64_t seed);

/// SMOTE: x + u (x_nn - x) with x_nn among the k nearest minority rows on
/// min-max scaled features. k shrinks (with a warning) when the minority
/// has k rows or fewer.
Dataset smote_balance(const Dataset& d, Index k, std::uint64_t seed);

/// ADASYN: per-minority-row quotas proportional to the share of majority
/// rows among its k nearest neighbours (all classes), rounded by largest
/// remainder; interpolation as SMOTE.
Dataset adasyn_balance(const Dataset& d, Index k, std::uint64_t seed);

/// Replaces the majority class by k-means centroids, k = minority count.
Dataset cluster_centroid_balance(const Dataset& d, std::uint64_t seed);

/// One BIC-selected Gaussian mixture per class (on z-scored features) and
/// ceil(rows / 2) samples drawn from each.
Dataset gmm_fit_sample(const Dataset& d, Index max_components, std::uint64_t seed,
                       GmmOptions options = {});

/// Share of majority rows among each minority row's k neighbours, the
/// weighting ADASYN allocates its quotas by. Exposed for testing.
Eigen::VectorXd adasyn_difficulty(const Dataset& d, Index k);

}  // namespace synthbench
