#pragma once

#include <vector>

#include <Eigen/Core>

#include "synthbench/data/dataset.hpp"

namespace synthbench {

/// Gaussian copula marginal: value -> Phi^-1(F(value)) with F the mid-rank
/// empirical CDF, F = (#below + (#equal + 1) / 2) / (n + 1), clipped to
/// [1/(n+1), n/(n+1)]. Between observed values F is linear; the inverse
/// interpolates the same knots and clamps to the observed range.
class CopulaMarginal {
 public:
  static CopulaMarginal fit(const Eigen::Ref<const Eigen::VectorXd>& x);

  double to_score(double v) const;
  double from_score(double z) const;

  const std::vector<double>& knots() const { return values_; }
  const std::vector<double>& cdf() const { return cdf_; }

 private:
  std::vector<double> values_;  // distinct observed values, ascending
  std::vector<double> cdf_;     // mid-rank CDF at each value, strictly increasing
};

/// Copula marginals for every Numeric column of a dataset; Binary columns
/// pass through unchanged.
class CopulaTransform {
 public:
  static CopulaTransform fit(const Dataset& d);
  Dataset forward(const Dataset& d) const;
  /// Maps scores back; `schema_source` supplies the original schema.
  Dataset inverse(const Dataset& scores, const Dataset& schema_source) const;

 private:
  std::vector<Index> columns_;
  std::vector<CopulaMarginal> marginals_;
};

}  // namespace synthbench
