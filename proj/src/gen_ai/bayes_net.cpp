#include "synthbench/gen_ai/bayes_net.hpp"

#include <limits>
#include <string>

#include "synthbench/featsel/information.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/log.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench {

ChowLiuBn ChowLiuBn::fit(const Dataset& d, int bins, double alpha) {
  if (bins < 2) throw ArgumentError("bins must be at least 2");
  if (!(alpha > 0.0)) throw ArgumentError("alpha must be positive");
  if (d.rows() == 0) throw DataError("cannot fit a network on an empty dataset");
  ChowLiuBn bn;
  bn.columns_ = d.cols();
  const Index target = d.target();

  std::vector<Index> cols;
  std::vector<Discretized> codes;
  for (Index j = 0; j < d.cols(); ++j) {
    const auto x = d.col(j);
    if (x.minCoeff() == x.maxCoeff()) {
      if (j == target) throw DataError("target column is constant");
      log_warn("column '" + d.column(j).name + "' is constant; left out of the network");
      bn.constants_.emplace_back(j, x[0]);
      continue;
    }
    cols.push_back(j);
    codes.push_back(discretize(x, bins, d.column(j).kind != ColumnKind::Numeric));
  }
  const int v = static_cast<int>(cols.size());

  Eigen::MatrixXd mi = Eigen::MatrixXd::Zero(v, v);
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b) mi(a, b) = mi(b, a) = mutual_information(codes[a], codes[b]).mi;

  // Prim's algorithm from the target; ties go to the lower column.
  int root = 0;
  while (cols[static_cast<std::size_t>(root)] != target) ++root;
  std::vector<bool> in_tree(static_cast<std::size_t>(v), false);
  std::vector<double> best(static_cast<std::size_t>(v), -std::numeric_limits<double>::infinity());
  std::vector<int> link(static_cast<std::size_t>(v), -1);
  std::vector<int> position(static_cast<std::size_t>(v), -1);
  std::vector<int> order;
  best[static_cast<std::size_t>(root)] = 0.0;
  for (int step = 0; step < v; ++step) {
    int pick = -1;
    for (int c = 0; c < v; ++c)
      if (!in_tree[static_cast<std::size_t>(c)] && (pick < 0 || best[static_cast<std::size_t>(c)] > best[static_cast<std::size_t>(pick)]))
        pick = c;
    in_tree[static_cast<std::size_t>(pick)] = true;
    position[static_cast<std::size_t>(pick)] = static_cast<int>(order.size());
    order.push_back(pick);
    for (int c = 0; c < v; ++c)
      if (!in_tree[static_cast<std::size_t>(c)] && mi(pick, c) > best[static_cast<std::size_t>(c)]) {
        best[static_cast<std::size_t>(c)] = mi(pick, c);
        link[static_cast<std::size_t>(c)] = pick;
      }
  }

  for (int c : order) {
    const auto& code = codes[static_cast<std::size_t>(c)];
    Node node;
    node.column = cols[static_cast<std::size_t>(c)];
    node.levels = code.levels;
    node.bin_min.assign(static_cast<std::size_t>(code.levels), std::numeric_limits<double>::infinity());
    node.bin_max.assign(static_cast<std::size_t>(code.levels), -std::numeric_limits<double>::infinity());
    const auto x = d.col(node.column);
    for (Index i = 0; i < d.rows(); ++i) {
      const auto k = static_cast<std::size_t>(code.codes[static_cast<std::size_t>(i)]);
      node.bin_min[k] = std::min(node.bin_min[k], x[i]);
      node.bin_max[k] = std::max(node.bin_max[k], x[i]);
    }
    const int parent = link[static_cast<std::size_t>(c)];
    const int parent_levels = parent < 0 ? 1 : codes[static_cast<std::size_t>(parent)].levels;
    node.parent = parent < 0 ? -1 : position[static_cast<std::size_t>(parent)];
    node.cpt = Eigen::MatrixXd::Constant(parent_levels, code.levels, alpha);
    for (Index i = 0; i < d.rows(); ++i) {
      const int p = parent < 0 ? 0 : codes[static_cast<std::size_t>(parent)].codes[static_cast<std::size_t>(i)];
      node.cpt(p, code.codes[static_cast<std::size_t>(i)]) += 1.0;
    }
    for (Index r = 0; r < node.cpt.rows(); ++r) node.cpt.row(r) /= node.cpt.row(r).sum();
    bn.nodes_.push_back(std::move(node));
  }
  return bn;
}

std::vector<std::pair<Index, Index>> ChowLiuBn::edges() const {
  std::vector<std::pair<Index, Index>> out;
  for (const auto& n : nodes_)
    if (n.parent >= 0) out.emplace_back(nodes_[static_cast<std::size_t>(n.parent)].column, n.column);
  return out;
}

Eigen::MatrixXd ChowLiuBn::sample(Index n, std::uint64_t seed) const {
  Rng rng(seed);
  Eigen::MatrixXd out(n, columns_);
  for (const auto& [j, value] : constants_) out.col(j).setConstant(value);
  std::vector<int> state(nodes_.size());
  for (Index i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      const auto& node = nodes_[k];
      const auto row = node.cpt.row(node.parent < 0 ? 0 : state[static_cast<std::size_t>(node.parent)]);
      const double u = rng.uniform();
      double acc = 0.0;
      int level = node.levels - 1;
      for (int l = 0; l < node.levels; ++l) {
        acc += row[l];
        if (u < acc) {
          level = l;
          break;
        }
      }
      state[k] = level;
      const double lo = node.bin_min[static_cast<std::size_t>(level)];
      const double hi = node.bin_max[static_cast<std::size_t>(level)];
      out(i, node.column) = lo == hi ? lo : lo + (hi - lo) * rng.uniform();
    }
  }
  return out;
}

Dataset bn_fit_sample(const Dataset& d, int bins, double alpha, std::uint64_t seed, Index rows) {
  const auto bn = ChowLiuBn::fit(d, bins, alpha);
  return d.with_values(bn.sample(rows > 0 ? rows : d.rows(), Rng::derive(seed, 1)));
}

}  // namespace synthbench
