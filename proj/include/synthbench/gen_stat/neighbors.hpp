#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

namespace synthbench {

using Eigen::Index;

/// Row-per-query neighbour lists; entry (q, j) is the j-th closest point.
using NeighborTable = Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Exact Euclidean k nearest neighbours of points.row(queries[q]) among all
/// rows of `points` other than the query row itself. Distances come from
/// blocked |a|^2 + |b|^2 - 2ab products; equal distances resolve to the
/// lower row index.
NeighborTable knn_self(const Eigen::MatrixXd& points, std::span<const Index> queries, Index k);

/// Per-column min-max scaling to [0, 1]; constant columns map to 0.
struct MinMaxScaler {
  Eigen::RowVectorXd min;
  Eigen::RowVectorXd range;  // 1 for constant columns

  static MinMaxScaler fit(const Eigen::MatrixXd& x);
  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd inverse(const Eigen::MatrixXd& z) const;
};

/// For each row of `x`: the index of the nearest row of `centers` and the
/// squared distances to the nearest and second-nearest centre.
struct Assignment {
  std::vector<Index> label;
  Eigen::VectorXd best;
  Eigen::VectorXd second;
};
Assignment assign_nearest(const Eigen::MatrixXd& x, std::span<const Index> rows, const Eigen::MatrixXd& centers);

}  // namespace synthbench
