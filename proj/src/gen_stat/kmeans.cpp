#include "synthbench/gen_stat/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "synthbench/gen_stat/neighbors.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench {
namespace {

Eigen::MatrixXd seed_plus_plus(const Eigen::MatrixXd& x, Index k, Rng& rng) {
  const Index n = x.rows();
  Eigen::MatrixXd centers(k, x.cols());
  Index first = static_cast<Index>(rng.index(static_cast<std::uint64_t>(n)));
  centers.row(0) = x.row(first);
  Eigen::VectorXd d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (Index c = 1; c < k; ++c) {
    const double total = d2.sum();
    Index pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      // every point already coincides with a centre
      pick = static_cast<Index>(rng.index(static_cast<std::uint64_t>(n)));
    }
    centers.row(c) = x.row(pick);
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& x, Index k, const KMeansOptions& options) {
  const Index n = x.rows();
  if (k < 1 || k > n) throw ArgumentError("k-means needs 1 <= k <= n, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
  Rng rng(options.seed);
  KMeansResult res;
  res.centers = seed_plus_plus(x, k, rng);

  const Eigen::RowVectorXd mean = x.colwise().mean();
  const double mean_var = n > 0 ? (x.rowwise() - mean).colwise().squaredNorm().sum() / static_cast<double>(n * x.cols()) : 0.0;
  const double tol = options.tolerance * mean_var;

  std::vector<Index> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Index{0});
  auto init = assign_nearest(x, all, res.centers);
  res.labels = init.label;
  Eigen::VectorXd upper = init.best.cwiseSqrt();
  Eigen::VectorXd lower = init.second.cwiseSqrt();

  Eigen::MatrixXd sums(k, x.cols());
  std::vector<Index> counts(static_cast<std::size_t>(k));
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    res.iterations = iter;
    sums.setZero();
    std::fill(counts.begin(), counts.end(), 0);
    for (Index i = 0; i < n; ++i) {
      const Index c = res.labels[static_cast<std::size_t>(i)];
      sums.row(c) += x.row(i);
      ++counts[static_cast<std::size_t>(c)];
    }
    Eigen::MatrixXd next = res.centers;
    std::vector<Index> taken;
    for (Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        next.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
        continue;
      }
      Index far = -1;
      double far_d = 0.0;
      for (Index i = 0; i < n; ++i) {
        if (upper[i] > far_d && std::find(taken.begin(), taken.end(), i) == taken.end()) {
          far_d = upper[i];
          far = i;
        }
      }
      if (far >= 0) {
        next.row(c) = x.row(far);
        taken.push_back(far);
      }
    }
    const Eigen::VectorXd move = (next - res.centers).rowwise().norm();
    const double shift = move.squaredNorm();
    res.centers = std::move(next);

    Index max1 = 0;
    for (Index c = 1; c < k; ++c)
      if (move[c] > move[max1]) max1 = c;
    double max2 = 0.0;
    for (Index c = 0; c < k; ++c)
      if (c != max1) max2 = std::max(max2, move[c]);

    std::vector<Index> recheck;
    for (Index i = 0; i < n; ++i) {
      const Index a = res.labels[static_cast<std::size_t>(i)];
      upper[i] += move[a];
      lower[i] -= a == max1 ? max2 : move[max1];
      if (upper[i] > lower[i]) {
        upper[i] = (x.row(i) - res.centers.row(a)).norm();
        if (upper[i] > lower[i]) recheck.push_back(i);
      }
    }
    Index changed = 0;
    if (!recheck.empty()) {
      const auto re = assign_nearest(x, recheck, res.centers);
      for (std::size_t r = 0; r < recheck.size(); ++r) {
        const Index i = recheck[r];
        auto& label = res.labels[static_cast<std::size_t>(i)];
        if (label != re.label[r]) ++changed;
        label = re.label[r];
        upper[i] = std::sqrt(re.best[static_cast<Index>(r)]);
        lower[i] = std::sqrt(re.second[static_cast<Index>(r)]);
      }
    }
    if (changed == 0 || shift <= tol) {
      res.converged = true;
      break;
    }
  }
  res.inertia = 0.0;
  for (Index i = 0; i < n; ++i)
    res.inertia += (x.row(i) - res.centers.row(res.labels[static_cast<std::size_t>(i)])).squaredNorm();
  return res;
}

}  // namespace synthbench
