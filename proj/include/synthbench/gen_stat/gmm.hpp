#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "synthbench/util/random.hpp"

namespace synthbench {

/// Full-covariance Gaussian mixture.
struct GmmModel {
  Eigen::VectorXd weights;
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covariances;
  /// Regularization actually added to every covariance diagonal.
  double regularization = 0.0;

  Eigen::Index components() const { return weights.size(); }
  Eigen::Index dimension() const { return means.empty() ? 0 : means.front().size(); }
  /// Free parameter count used by BIC.
  double parameter_count() const;
};

struct GmmOptions {
  int max_iterations = 200;
  /// Convergence threshold on the change of the mean per-row log-likelihood.
  double tolerance = 1e-4;
  double regularization = 1e-6;
  double max_regularization = 1e-2;
  std::uint64_t seed = 0;
};

struct GmmFit {
  GmmModel model;
  /// Mean per-row log-likelihood after each EM iteration.
  std::vector<double> log_likelihood;
  bool converged = false;
  double bic = 0.0;
};

/// EM from a k-means initialisation. A covariance that is not positive
/// definite raises the regularization tenfold up to max_regularization,
/// then TrainingError. Non-convergence returns the last iterate with a
/// warning.
GmmFit fit_gmm(const Eigen::MatrixXd& x, Eigen::Index components, const GmmOptions& options);

/// Fits 1..max_components and keeps the lowest BIC (-2 LL + p ln n).
GmmFit fit_gmm_bic(const Eigen::MatrixXd& x, Eigen::Index max_components, const GmmOptions& options,
                   std::vector<double>* bic_trace = nullptr);

/// Total log-likelihood of the rows of x.
double gmm_log_likelihood(const GmmModel& model, const Eigen::MatrixXd& x);

Eigen::MatrixXd sample_gmm(const GmmModel& model, Eigen::Index n, Rng& rng);

}  // namespace synthbench
