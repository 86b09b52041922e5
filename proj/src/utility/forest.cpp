#include "synthbench/utility/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "synthbench/util/error.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench {

nlohmann::ordered_json ForestConfig::to_json() const {
  return {{"classifier", "bagged_cart"}, {"trees", trees},          {"max_depth", max_depth},
          {"criterion", "gini"},         {"max_features", "sqrt"}, {"max_bins", max_bins},
          {"bootstrap", true},           {"seed", seed}};
}

int DecisionTree::predict(const double* row, Index stride) const {
  int k = 0;
  while (nodes[static_cast<std::size_t>(k)].feature >= 0) {
    const auto& n = nodes[static_cast<std::size_t>(k)];
    k = row[n.feature * stride] <= n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<std::size_t>(k)].label;
}

int DecisionTree::depth() const {
  std::vector<int> level(nodes.size(), 0);
  int deepest = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    deepest = std::max(deepest, level[k]);
    if (nodes[k].feature >= 0) {
      level[static_cast<std::size_t>(nodes[k].left)] = level[k] + 1;
      level[static_cast<std::size_t>(nodes[k].right)] = level[k] + 1;
    }
  }
  return deepest;
}

namespace {

/// Training features as small integer codes; each code keeps the smallest
/// and largest training value it covers.
struct BinnedFeatures {
  Index rows = 0;
  std::vector<std::vector<std::uint16_t>> codes;  // per feature
  std::vector<std::vector<double>> low;           // per feature and code
  std::vector<std::vector<double>> high;

  int levels(std::size_t f) const { return static_cast<int>(low[f].size()); }
};

BinnedFeatures bin_features(const Eigen::MatrixXd& x, int max_bins) {
  BinnedFeatures out;
  out.rows = x.rows();
  const auto n = static_cast<std::size_t>(x.rows());
  for (Index j = 0; j < x.cols(); ++j) {
    std::vector<double> sorted(x.col(j).data(), x.col(j).data() + n);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> distinct = sorted;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<double> edges;  // upper value of each code
    if (distinct.size() <= static_cast<std::size_t>(max_bins)) {
      edges = std::move(distinct);
    } else {
      for (int k = 1; k <= max_bins; ++k) {
        const auto pos = (static_cast<std::size_t>(k) * n + static_cast<std::size_t>(max_bins) - 1) /
                         static_cast<std::size_t>(max_bins);
        edges.push_back(sorted[std::max<std::size_t>(pos, 1) - 1]);
      }
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
    std::vector<std::uint16_t> codes(n);
    for (std::size_t i = 0; i < n; ++i)
      codes[i] = static_cast<std::uint16_t>(std::lower_bound(edges.begin(), edges.end(), x(static_cast<Index>(i), j)) - edges.begin());
    std::vector<double> low(edges.size(), 0.0), high(edges.size(), 0.0);
    std::size_t pos = 0;
    for (std::size_t b = 0; b < edges.size(); ++b) {
      low[b] = sorted[pos];
      pos = static_cast<std::size_t>(std::upper_bound(sorted.begin() + static_cast<std::ptrdiff_t>(pos), sorted.end(), edges[b]) - sorted.begin());
      high[b] = edges[b];
    }
    out.codes.push_back(std::move(codes));
    out.low.push_back(std::move(low));
    out.high.push_back(std::move(high));
  }
  return out;
}

struct Split {
  int feature = -1;
  int bin = -1;
  double threshold = 0.0;  // midpoint between the node's values either side
  double score = 0.0;      // weighted child impurity, lower is better
};

double gini_mass(double w0, double w1) {
  const double w = w0 + w1;
  return w > 0.0 ? w - (w0 * w0 + w1 * w1) / w : 0.0;
}

class TreeBuilder {
 public:
  TreeBuilder(const BinnedFeatures& x, const std::vector<int>& y, const ForestConfig& config, Rng& rng)
      : x_(x), y_(y), config_(config), rng_(rng) {
    mtry_ = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(x.codes.size())))));
    order_.resize(x.codes.size());
    std::iota(order_.begin(), order_.end(), 0);
  }

  DecisionTree build(std::vector<Index> rows, const std::vector<std::uint32_t>& weights) {
    weights_ = &weights;
    tree_.nodes.clear();
    grow(rows, 0);
    return std::move(tree_);
  }

 private:
  int grow(std::vector<Index>& rows, int depth) {
    double w0 = 0.0, w1 = 0.0;
    for (Index r : rows) (y_[static_cast<std::size_t>(r)] ? w1 : w0) += (*weights_)[static_cast<std::size_t>(r)];
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back({});
    tree_.nodes.back().label = w1 > w0 ? 1 : 0;
    if (depth >= config_.max_depth || w0 == 0.0 || w1 == 0.0 || w0 + w1 < 2.0) return id;

    const Split best = find_split(rows, w0, w1);
    if (best.feature < 0) return id;
    const auto& codes = x_.codes[static_cast<std::size_t>(best.feature)];
    std::vector<Index> left, right;
    for (Index r : rows) (codes[static_cast<std::size_t>(r)] <= best.bin ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    auto& node = tree_.nodes[static_cast<std::size_t>(id)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = l;
    node.right = r;
    return id;
  }

  Split find_split(const std::vector<Index>& rows, double w0, double w1) {
    // Partial Fisher-Yates: the first mtry entries become the candidates.
    for (int k = 0; k < mtry_; ++k) {
      const auto j = static_cast<std::size_t>(k) + static_cast<std::size_t>(rng_.index(order_.size() - static_cast<std::size_t>(k)));
      std::swap(order_[static_cast<std::size_t>(k)], order_[j]);
    }
    Split best;
    best.score = gini_mass(w0, w1) - 1e-12;
    for (int k = 0; k < mtry_; ++k) {
      const int f = order_[static_cast<std::size_t>(k)];
      const int levels = x_.levels(static_cast<std::size_t>(f));
      if (levels < 2) continue;
      const auto& codes = x_.codes[static_cast<std::size_t>(f)];
      hist_.assign(2 * static_cast<std::size_t>(levels), 0.0);
      for (Index r : rows)
        hist_[2 * codes[static_cast<std::size_t>(r)] + static_cast<std::size_t>(y_[static_cast<std::size_t>(r)])] +=
            (*weights_)[static_cast<std::size_t>(r)];
      double l0 = 0.0, l1 = 0.0;
      int prev = -1;  // last non-empty code
      for (int b = 0; b < levels; ++b) {
        const double h0 = hist_[2 * static_cast<std::size_t>(b)];
        const double h1 = hist_[2 * static_cast<std::size_t>(b) + 1];
        if (h0 + h1 == 0.0) continue;
        if (prev >= 0) {
          const double score = gini_mass(l0, l1) + gini_mass(w0 - l0, w1 - l1);
          if (score < best.score) {
            const double lo = x_.high[static_cast<std::size_t>(f)][static_cast<std::size_t>(prev)];
            const double hi = x_.low[static_cast<std::size_t>(f)][static_cast<std::size_t>(b)];
            best = {f, prev, 0.5 * (lo + hi), score};
          }
        }
        l0 += h0;
        l1 += h1;
        prev = b;
      }
    }
    return best;
  }

  const BinnedFeatures& x_;
  const std::vector<int>& y_;
  const ForestConfig& config_;
  Rng& rng_;
  int mtry_ = 1;
  std::vector<int> order_;
  std::vector<double> hist_;
  const std::vector<std::uint32_t>* weights_ = nullptr;
  DecisionTree tree_;
};

}  // namespace

Eigen::MatrixXd TreeEnsemble::features_of(const Dataset& d) const {
  if (!d.has_target() || d.column(d.target()).name != target_)
    throw DataError("table target does not match the classifier's target '" + target_ + "'");
  const auto idx = d.feature_indices();
  if (idx.size() != features_.size()) throw DataError("table has a different feature count than the classifier");
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (d.column(idx[k]).name != features_[k])
      throw DataError("feature " + std::to_string(k) + " is '" + d.column(idx[k]).name + "', expected '" + features_[k] + "'");
  return d.feature_matrix();
}

TreeEnsemble TreeEnsemble::train(const Dataset& train, const ForestConfig& config) {
  if (config.trees < 1 || config.max_depth < 1 || config.max_bins < 2 || config.max_bins > 65535)
    throw ArgumentError("forest needs trees >= 1, max_depth >= 1 and 2 <= max_bins <= 65535");
  const auto counts = train.class_counts();
  if (counts[0] == 0 || counts[1] == 0) throw DataError("training data has a single class");
  TreeEnsemble model;
  model.target_ = train.column(train.target()).name;
  for (Index j : train.feature_indices()) model.features_.push_back(train.column(j).name);
  if (model.features_.empty()) throw DataError("training data has no features");

  const auto binned = bin_features(train.feature_matrix(), config.max_bins);
  std::vector<int> y(static_cast<std::size_t>(train.rows()));
  for (Index i = 0; i < train.rows(); ++i) y[static_cast<std::size_t>(i)] = train.values()(i, train.target()) > 0.5 ? 1 : 0;

  const auto n = static_cast<std::size_t>(train.rows());
  std::vector<std::uint32_t> weights(n);
  for (int t = 0; t < config.trees; ++t) {
    Rng rng(Rng::derive(config.seed, static_cast<std::uint64_t>(t)));
    std::fill(weights.begin(), weights.end(), 0u);
    for (std::size_t k = 0; k < n; ++k) ++weights[rng.index(n)];
    std::vector<Index> rows;
    for (std::size_t i = 0; i < n; ++i)
      if (weights[i] > 0) rows.push_back(static_cast<Index>(i));
    TreeBuilder builder(binned, y, config, rng);
    model.trees_.push_back(builder.build(std::move(rows), weights));
  }
  return model;
}

std::vector<int> TreeEnsemble::votes(const Dataset& d) const {
  const Eigen::MatrixXd x = features_of(d);
  std::vector<int> out(static_cast<std::size_t>(x.rows()), 0);
  for (const auto& tree : trees_)
    for (Index i = 0; i < x.rows(); ++i) out[static_cast<std::size_t>(i)] += tree.predict(x.data() + i, x.rows());
  return out;
}

std::vector<int> TreeEnsemble::predict(const Dataset& d) const {
  auto v = votes(d);
  const int n = static_cast<int>(trees_.size());
  for (auto& x : v) x = 2 * x > n ? 1 : 0;
  return v;
}

}  // namespace synthbench
