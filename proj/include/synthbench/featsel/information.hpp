#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace synthbench {

/// Integer codes of a discretized vector plus the number of distinct codes.
struct Discretized {
  std::vector<int> codes;
  int levels = 0;
};

/// Exact-value codes when `exact` is set or the vector has at most `bins`
/// distinct values; otherwise equal-frequency bins whose upper edges are the
/// k/bins quantiles. Repeated edges collapse, so heavy atoms keep one bin.
Discretized discretize(const Eigen::Ref<const Eigen::VectorXd>& x, int bins, bool exact = false);

/// Default bin count for numeric columns: min(64, ceil(sqrt(n))).
int default_bins(Eigen::Index n);

/// Plug-in Shannon entropy (nats) of a code vector.
double entropy(const Discretized& x);
/// Joint entropy over the product of two discretizations.
double joint_entropy(const Discretized& x, const Discretized& y);

/// entropy(discretize(x, bins)); throws ArgumentError on an empty vector.
double entropy(const Eigen::Ref<const Eigen::VectorXd>& x, int bins);

struct DependenceEstimate {
  double h_x = 0.0;
  double h_y = 0.0;
  double h_xy = 0.0;
  /// h_x + h_y - h_xy, floored at 0.
  double mi = 0.0;
};

DependenceEstimate mutual_information(const Discretized& x, const Discretized& y);
DependenceEstimate mutual_information(const Eigen::Ref<const Eigen::VectorXd>& x,
                                      const Eigen::Ref<const Eigen::VectorXd>& y, int bins);

/// H(Y) - H(Y|X) with H(Y|X) = H(X,Y) - H(X).
double information_gain(const Eigen::Ref<const Eigen::VectorXd>& y, const Eigen::Ref<const Eigen::VectorXd>& x,
                        int bins);

/// Sample Pearson correlation, or nullopt when either side has zero variance.
template <typename DerivedX, typename DerivedY>
std::optional<double> pearson_correlation(const Eigen::DenseBase<DerivedX>& x, const Eigen::DenseBase<DerivedY>& y) {
  eigen_assert(x.size() == y.size());
  if (x.size() < 2) return std::nullopt;
  const auto xa = x.derived().array().template cast<double>();
  const auto ya = y.derived().array().template cast<double>();
  const double mx = xa.mean();
  const double my = ya.mean();
  const double sxx = (xa - mx).square().sum();
  const double syy = (ya - my).square().sum();
  if (!(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
  const double r = ((xa - mx) * (ya - my)).sum() / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace synthbench
