#pragma once

#include <string>

#include "synthbench/data/dataset.hpp"

namespace synthbench {

/// Absolute Pearson correlations of all column pairs. Constant columns
/// correlate as 0 (diagonal included) and are reported with a warning.
Eigen::MatrixXd abs_correlation(const Dataset& d);

struct CorrelationOptions {
  double mean_tolerance = 0.05;
  double max_tolerance = 0.25;
};

struct CorrelationReport {
  bool similar = true;
  double mean_abs_diff = 0.0;  // over off-diagonal entries
  double max_abs_diff = 0.0;
  Eigen::MatrixXd real;
  Eigen::MatrixXd synth;
  Eigen::MatrixXd diff;  // |real - synth|
};

CorrelationReport correlation_report(const Dataset& real, const Dataset& synth, const CorrelationOptions& options = {});

/// Square matrix as CSV with the column names as header and first column.
std::string correlation_csv(const Eigen::MatrixXd& m, const std::vector<std::string>& names);

}  // namespace synthbench
