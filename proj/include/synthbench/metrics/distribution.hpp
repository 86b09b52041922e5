#pragma once

#include <string>
#include <vector>

#include "synthbench/data/dataset.hpp"

namespace synthbench {

/// Gaussian kernel density on an evenly spaced grid, normalized so that its
/// trapezoidal integral is 1.
struct KdeCurve {
  Eigen::VectorXd grid;
  Eigen::VectorXd density;
  double bandwidth = 0.0;
  /// Constant input: all mass sits on the grid point nearest the constant.
  bool point_mass = false;
};

constexpr Index kKdeGridPoints = 256;
constexpr double kMinBandwidth = 1e-9;

/// 0.9 min(sd, IQR / 1.34) n^(-1/5); the sd term alone when the IQR is 0.
/// Never below kMinBandwidth.
double silverman_bandwidth(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Density of x evaluated on `grid`.
KdeCurve kde_on_grid(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::VectorXd& grid);
/// Density of x on its own range padded by 3 bandwidths.
KdeCurve kde_estimate(const Eigen::Ref<const Eigen::VectorXd>& x);

struct KdePair {
  KdeCurve real;
  KdeCurve synth;  // same grid as real
};

/// Both densities on one grid spanning the union range padded by 3 of the
/// larger bandwidth.
KdePair kde_pair(const Eigen::Ref<const Eigen::VectorXd>& real, const Eigen::Ref<const Eigen::VectorXd>& synth);

/// CSV with columns grid, real_density, synth_density.
std::string kde_pair_csv(const KdePair& pair);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b);

/// Deterministic class-stratified subsample of at most `limit` rows: class
/// quotas by largest remainder, evenly spaced rows within each class.
Dataset even_subsample(const Dataset& d, Index limit);

struct PdOptions {
  double ks_threshold = 0.10;
  /// Each side is subsampled to this many rows before comparison.
  Index max_rows = 50000;
  bool curves = true;
};

struct VariableDistribution {
  std::string column;
  double ks = 0.0;
  bool different = false;
  KdePair curves;
};

struct PdReport {
  double percent = 0.0;
  Index differing = 0;
  Index total = 0;
  std::vector<VariableDistribution> variables;
};

/// Share of columns (target included) whose KS statistic exceeds the
/// threshold, in percent.
PdReport pd_percent(const Dataset& real, const Dataset& synth, const PdOptions& options = {});

/// |P(class 0) - P(class 1)| in percent.
double class_balance_diff(const Dataset& d);

}  // namespace synthbench
