#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace synthbench {

struct KMeansOptions {
  int max_iterations = 300;
  /// Relative to the mean per-column variance of the data; iteration stops
  /// once the summed squared centre shift falls to tol * mean variance.
  double tolerance = 1e-4;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  Eigen::MatrixXd centers;
  std::vector<Eigen::Index> labels;
  double inertia = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Lloyd's algorithm with k-means++ seeding. Points whose distance to their
/// centre stays below a lower bound on the distance to every other centre
/// skip reassignment (Hamerly's bound). An empty cluster is re-seeded at the
/// point farthest from its centre.
KMeansResult kmeans(const Eigen::MatrixXd& x, Eigen::Index k, const KMeansOptions& options);

}  // namespace synthbench
