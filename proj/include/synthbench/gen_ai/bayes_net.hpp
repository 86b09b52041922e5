#pragma once

#include <cstdint>
#include <vector>

#include "synthbench/data/dataset.hpp"

namespace synthbench {

/// Tree-structured Bayesian network over discretized columns: the maximum
/// spanning tree of pairwise mutual information, rooted at the target.
class ChowLiuBn {
 public:
  struct Node {
    Index column = 0;
    int parent = -1;  // position in nodes(), -1 for the root
    int levels = 0;
    std::vector<double> bin_min;  // per level, smallest member value
    std::vector<double> bin_max;  // per level, largest member value
    /// Row-major (parent level, own level) conditional probabilities; a
    /// single row for the root.
    Eigen::MatrixXd cpt;
  };

  /// Constant columns are left out of the tree (with a warning) and emitted
  /// as their constant.
  static ChowLiuBn fit(const Dataset& d, int bins, double alpha);

  /// Nodes in topological order (root first).
  const std::vector<Node>& nodes() const { return nodes_; }
  /// (parent column, child column) pairs.
  std::vector<std::pair<Index, Index>> edges() const;

  Eigen::MatrixXd sample(Index n, std::uint64_t seed) const;

 private:
  Index columns_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::pair<Index, double>> constants_;
};

/// Fits a Chow-Liu network and draws `rows` rows (0: as many as the input).
Dataset bn_fit_sample(const Dataset& d, int bins, double alpha, std::uint64_t seed, Index rows = 0);

}  // namespace synthbench
