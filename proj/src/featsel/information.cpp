#include "synthbench/featsel/information.hpp"

#include <algorithm>
#include <map>

#include "synthbench/util/error.hpp"

namespace synthbench {

int default_bins(Eigen::Index n) {
  return static_cast<int>(std::min<double>(64.0, std::ceil(std::sqrt(static_cast<double>(std::max<Eigen::Index>(n, 1))))));
}

Discretized discretize(const Eigen::Ref<const Eigen::VectorXd>& x, int bins, bool exact) {
  if (bins < 1) throw ArgumentError("bins must be at least 1");
  const auto n = static_cast<std::size_t>(x.size());
  std::vector<double> sorted(x.data(), x.data() + n);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<double> edges;
  if (exact || distinct.size() <= static_cast<std::size_t>(bins)) {
    edges = std::move(distinct);
  } else {
    for (int k = 1; k <= bins; ++k) {
      const auto pos = (static_cast<std::size_t>(k) * n + bins - 1) / static_cast<std::size_t>(bins);
      edges.push_back(sorted[std::max<std::size_t>(pos, 1) - 1]);
    }
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  Discretized out;
  out.codes.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.codes[i] = static_cast<int>(std::lower_bound(edges.begin(), edges.end(), x[static_cast<Eigen::Index>(i)]) -
                                    edges.begin());
  out.levels = static_cast<int>(edges.size());
  return out;
}

namespace {

double entropy_of_counts(const std::vector<std::size_t>& counts, std::size_t n) {
  double h = 0.0;
  const double inv = 1.0 / static_cast<double>(n);
  for (const auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) * inv;
    h -= p * std::log(p);
  }
  return std::max(h, 0.0);
}

}  // namespace

double entropy(const Discretized& x) {
  if (x.codes.empty()) throw ArgumentError("entropy of an empty vector");
  std::vector<std::size_t> counts(static_cast<std::size_t>(x.levels), 0);
  for (const int c : x.codes) ++counts[static_cast<std::size_t>(c)];
  return entropy_of_counts(counts, x.codes.size());
}

double joint_entropy(const Discretized& x, const Discretized& y) {
  if (x.codes.size() != y.codes.size())
    throw ArgumentError("length mismatch: " + std::to_string(x.codes.size()) + " vs " + std::to_string(y.codes.size()));
  if (x.codes.empty()) throw ArgumentError("entropy of an empty vector");
  const auto cells = static_cast<std::size_t>(x.levels) * static_cast<std::size_t>(y.levels);
  std::vector<std::size_t> counts;
  if (cells <= (std::size_t{1} << 22)) {
    counts.assign(cells, 0);
    for (std::size_t i = 0; i < x.codes.size(); ++i)
      ++counts[static_cast<std::size_t>(x.codes[i]) * static_cast<std::size_t>(y.levels) +
               static_cast<std::size_t>(y.codes[i])];
  } else {
    std::map<std::pair<int, int>, std::size_t> sparse;
    for (std::size_t i = 0; i < x.codes.size(); ++i) ++sparse[{x.codes[i], y.codes[i]}];
    for (const auto& [key, c] : sparse) counts.push_back(c);
  }
  return entropy_of_counts(counts, x.codes.size());
}

double entropy(const Eigen::Ref<const Eigen::VectorXd>& x, int bins) {
  if (x.size() == 0) throw ArgumentError("entropy of an empty vector");
  return entropy(discretize(x, bins));
}

DependenceEstimate mutual_information(const Discretized& x, const Discretized& y) {
  DependenceEstimate e;
  e.h_x = entropy(x);
  e.h_y = entropy(y);
  e.h_xy = joint_entropy(x, y);
  e.mi = std::max(0.0, e.h_x + e.h_y - e.h_xy);
  return e;
}

DependenceEstimate mutual_information(const Eigen::Ref<const Eigen::VectorXd>& x,
                                      const Eigen::Ref<const Eigen::VectorXd>& y, int bins) {
  if (x.size() != y.size())
    throw ArgumentError("length mismatch: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  if (x.size() == 0) throw ArgumentError("mutual information of empty vectors");
  return mutual_information(discretize(x, bins), discretize(y, bins));
}

double information_gain(const Eigen::Ref<const Eigen::VectorXd>& y, const Eigen::Ref<const Eigen::VectorXd>& x,
                        int bins) {
  if (x.size() != y.size())
    throw ArgumentError("length mismatch: " + std::to_string(y.size()) + " vs " + std::to_string(x.size()));
  const auto dx = discretize(x, bins);
  const auto dy = discretize(y, bins);
  const double conditional = joint_entropy(dx, dy) - entropy(dx);
  return std::max(0.0, entropy(dy) - conditional);
}

}  // namespace synthbench
