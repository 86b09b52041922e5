#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "synthbench/data/dataset.hpp"

namespace synthbench {

struct ForestConfig {
  int trees = 100;
  int max_depth = 16;
  /// Features with more distinct training values are split on this many
  /// equal-frequency candidate thresholds; others on every midpoint.
  int max_bins = 256;
  std::uint64_t seed = 0;

  nlohmann::ordered_json to_json() const;
};

/// Binary CART tree on Gini impurity. A row goes left when
/// value <= threshold.
struct DecisionTree {
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;
  };
  std::vector<Node> nodes;

  int predict(const double* row, Index stride) const;
  int depth() const;
};

/// Bagged CART ensemble: every tree sees a bootstrap sample and sqrt(p)
/// random features per split; prediction is the majority vote, ties going
/// to class 0.
class TreeEnsemble {
 public:
  static TreeEnsemble train(const Dataset& train, const ForestConfig& config);

  /// Throws DataError unless `d` has the training feature names and target.
  std::vector<int> predict(const Dataset& d) const;
  /// Votes for class 1 per row.
  std::vector<int> votes(const Dataset& d) const;

  const std::vector<DecisionTree>& trees() const { return trees_; }
  const std::vector<std::string>& features() const { return features_; }

 private:
  Eigen::MatrixXd features_of(const Dataset& d) const;

  std::vector<std::string> features_;
  std::string target_;
  std::vector<DecisionTree> trees_;
};

}  // namespace synthbench
