#include "synthbench/gen_stat/neighbors.hpp"

#include <algorithm>
#include <limits>

#include "synthbench/util/error.hpp"

namespace synthbench {
namespace {

constexpr Index kBlock = 64;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

NeighborTable knn_self(const Eigen::MatrixXd& points, std::span<const Index> queries, Index k) {
  const Index n = points.rows();
  if (k < 1 || k > n - 1)
    throw ArgumentError("cannot find " + std::to_string(k) + " neighbours among " + std::to_string(n) + " points");
  const Eigen::VectorXd norms = points.rowwise().squaredNorm();
  NeighborTable out(static_cast<Index>(queries.size()), k);
  std::vector<std::pair<double, Index>> best(static_cast<std::size_t>(k));
  for (std::size_t start = 0; start < queries.size(); start += kBlock) {
    const auto len = static_cast<Index>(std::min<std::size_t>(kBlock, queries.size() - start));
    Eigen::MatrixXd q(len, points.cols());
    for (Index r = 0; r < len; ++r) q.row(r) = points.row(queries[start + static_cast<std::size_t>(r)]);
    // column-major: column r holds distances from query r to every point
    Eigen::MatrixXd d = -2.0 * (points * q.transpose());
    d.colwise() += norms;
    for (Index r = 0; r < len; ++r) {
      const Index self = queries[start + static_cast<std::size_t>(r)];
      std::fill(best.begin(), best.end(), std::make_pair(kInf, n));
      const double* col = d.col(r).data();
      for (Index p = 0; p < n; ++p) {
        if (p == self) continue;
        const std::pair<double, Index> cand{col[p], p};
        if (cand >= best.back()) continue;
        auto it = std::upper_bound(best.begin(), best.end(), cand);
        std::move_backward(it, best.end() - 1, best.end());
        *it = cand;
      }
      for (Index j = 0; j < k; ++j) out(static_cast<Index>(start) + r, j) = best[static_cast<std::size_t>(j)].second;
    }
  }
  return out;
}

MinMaxScaler MinMaxScaler::fit(const Eigen::MatrixXd& x) {
  MinMaxScaler s;
  s.min = x.colwise().minCoeff();
  s.range = x.colwise().maxCoeff() - s.min;
  for (Index j = 0; j < s.range.size(); ++j)
    if (!(s.range[j] > 0.0)) s.range[j] = 1.0;
  return s;
}

Eigen::MatrixXd MinMaxScaler::transform(const Eigen::MatrixXd& x) const {
  return (x.rowwise() - min).array().rowwise() / range.array();
}

Eigen::MatrixXd MinMaxScaler::inverse(const Eigen::MatrixXd& z) const {
  return (z.array().rowwise() * range.array()).matrix().rowwise() + min;
}

Assignment assign_nearest(const Eigen::MatrixXd& x, std::span<const Index> rows, const Eigen::MatrixXd& centers) {
  const Index k = centers.rows();
  const Eigen::VectorXd cnorm = centers.rowwise().squaredNorm();
  Assignment a;
  a.label.resize(rows.size());
  a.best.resize(static_cast<Index>(rows.size()));
  a.second.resize(static_cast<Index>(rows.size()));
  for (std::size_t start = 0; start < rows.size(); start += kBlock) {
    const auto len = static_cast<Index>(std::min<std::size_t>(kBlock, rows.size() - start));
    Eigen::MatrixXd q(len, x.cols());
    for (Index r = 0; r < len; ++r) q.row(r) = x.row(rows[start + static_cast<std::size_t>(r)]);
    Eigen::MatrixXd d = -2.0 * (centers * q.transpose());
    d.colwise() += cnorm;
    for (Index r = 0; r < len; ++r) {
      const double qn = q.row(r).squaredNorm();
      double b1 = kInf, b2 = kInf;
      Index l1 = 0;
      const double* col = d.col(r).data();
      for (Index c = 0; c < k; ++c) {
        const double v = col[c];
        if (v < b1) {
          b2 = b1;
          b1 = v;
          l1 = c;
        } else if (v < b2) {
          b2 = v;
        }
      }
      const auto at = static_cast<Index>(start) + r;
      a.label[static_cast<std::size_t>(at)] = l1;
      a.best[at] = std::max(0.0, b1 + qn);
      a.second[at] = k > 1 ? std::max(0.0, b2 + qn) : kInf;
    }
  }
  return a;
}

}  // namespace synthbench
