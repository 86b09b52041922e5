#include "synthbench/metrics/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "synthbench/data/split.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/io.hpp"

namespace synthbench {

namespace {

/// Linear-interpolation quantile of sorted values.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> sorted_values(const Eigen::Ref<const Eigen::VectorXd>& x) {
  std::vector<double> v(x.data(), x.data() + x.size());
  std::sort(v.begin(), v.end());
  return v;
}

double trapezoid(const Eigen::VectorXd& grid, const Eigen::VectorXd& y) {
  double s = 0.0;
  for (Index k = 1; k < grid.size(); ++k) s += 0.5 * (y[k] + y[k - 1]) * (grid[k] - grid[k - 1]);
  return s;
}

Eigen::VectorXd make_grid(double lo, double hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  return Eigen::VectorXd::LinSpaced(kKdeGridPoints, lo, hi);
}

Index nearest_grid_point(const Eigen::VectorXd& grid, double v) {
  const double step = (grid[grid.size() - 1] - grid[0]) / static_cast<double>(grid.size() - 1);
  const double k = std::round((v - grid[0]) / step);
  return static_cast<Index>(std::clamp(k, 0.0, static_cast<double>(grid.size() - 1)));
}

}  // namespace

double silverman_bandwidth(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Index n = x.size();
  if (n < 2) return kMinBandwidth;
  const double mean = x.mean();
  const double sd = std::sqrt((x.array() - mean).square().sum() / static_cast<double>(n - 1));
  const auto sorted = sorted_values(x);
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  return std::max(0.9 * spread * std::pow(static_cast<double>(n), -0.2), kMinBandwidth);
}

KdeCurve kde_on_grid(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::VectorXd& grid) {
  if (x.size() == 0) throw DataError("cannot estimate a density from no values");
  KdeCurve c;
  c.grid = grid;
  c.density = Eigen::VectorXd::Zero(grid.size());
  c.bandwidth = silverman_bandwidth(x);
  if (x.minCoeff() == x.maxCoeff()) {
    c.point_mass = true;
    c.density[nearest_grid_point(grid, x[0])] = 1.0;
    c.density /= trapezoid(grid, c.density);
    return c;
  }
  const auto sorted = sorted_values(x);
  const double h = c.bandwidth;
  const double reach = 8.0 * h;
  const double norm = 1.0 / (static_cast<double>(sorted.size()) * h * std::sqrt(2.0 * std::numbers::pi));
  for (Index k = 0; k < grid.size(); ++k) {
    const auto first = std::lower_bound(sorted.begin(), sorted.end(), grid[k] - reach);
    const auto last = std::upper_bound(first, sorted.end(), grid[k] + reach);
    double s = 0.0;
    for (auto it = first; it != last; ++it) {
      const double u = (grid[k] - *it) / h;
      s += std::exp(-0.5 * u * u);
    }
    c.density[k] = s * norm;
  }
  double area = trapezoid(grid, c.density);
  if (!(area > 0.0)) {
    // Bandwidth far below the grid spacing: fall back to a histogram on the grid.
    for (double v : sorted) c.density[nearest_grid_point(grid, v)] += 1.0;
    area = trapezoid(grid, c.density);
  }
  c.density /= area;
  return c;
}

KdeCurve kde_estimate(const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() == 0) throw DataError("cannot estimate a density from no values");
  const double h = silverman_bandwidth(x);
  return kde_on_grid(x, make_grid(x.minCoeff() - 3.0 * h, x.maxCoeff() + 3.0 * h));
}

KdePair kde_pair(const Eigen::Ref<const Eigen::VectorXd>& real, const Eigen::Ref<const Eigen::VectorXd>& synth) {
  if (real.size() == 0 || synth.size() == 0) throw DataError("cannot estimate a density from no values");
  const double pad = 3.0 * std::max(silverman_bandwidth(real), silverman_bandwidth(synth));
  const auto grid = make_grid(std::min(real.minCoeff(), synth.minCoeff()) - pad,
                              std::max(real.maxCoeff(), synth.maxCoeff()) + pad);
  return {kde_on_grid(real, grid), kde_on_grid(synth, grid)};
}

std::string kde_pair_csv(const KdePair& pair) {
  std::string out = "grid,real_density,synth_density\n";
  for (Index k = 0; k < pair.real.grid.size(); ++k)
    out += format_number(pair.real.grid[k]) + "," + format_number(pair.real.density[k]) + "," +
           format_number(pair.synth.density[k]) + "\n";
  return out;
}

double ks_statistic(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b) {
  if (a.size() == 0 || b.size() == 0) throw DataError("KS statistic needs two non-empty samples");
  const auto x = sorted_values(a);
  const auto y = sorted_values(b);
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

Dataset even_subsample(const Dataset& d, Index limit) {
  if (limit < 1) throw ArgumentError("subsample limit must be positive");
  if (d.rows() <= limit) return d;
  const auto groups = rows_by_class(d);
  const std::vector<double> weights{static_cast<double>(groups[0].size()), static_cast<double>(groups[1].size())};
  const auto quota = largest_remainder(weights, limit);
  std::vector<Index> rows;
  for (std::size_t c = 0; c < 2; ++c) {
    const auto& g = groups[c];
    const auto q = static_cast<std::size_t>(quota[c]);
    for (std::size_t k = 0; k < q; ++k) rows.push_back(g[(2 * k + 1) * g.size() / (2 * q)]);
  }
  std::sort(rows.begin(), rows.end());
  return d.select_rows(rows);
}

PdReport pd_percent(const Dataset& real, const Dataset& synth, const PdOptions& options) {
  if (real.names() != synth.names()) throw DataError("real and synthetic tables have different columns");
  const Dataset r = even_subsample(real, options.max_rows);
  const Dataset s = even_subsample(synth, options.max_rows);
  PdReport out;
  out.total = real.cols();
  for (Index j = 0; j < real.cols(); ++j) {
    VariableDistribution v;
    v.column = real.column(j).name;
    v.ks = ks_statistic(r.col(j), s.col(j));
    v.different = v.ks > options.ks_threshold;
    if (options.curves) v.curves = kde_pair(r.col(j), s.col(j));
    out.differing += v.different ? 1 : 0;
    out.variables.push_back(std::move(v));
  }
  out.percent = out.total > 0 ? 100.0 * static_cast<double>(out.differing) / static_cast<double>(out.total) : 0.0;
  return out;
}

double class_balance_diff(const Dataset& d) {
  const auto counts = d.class_counts();
  const double n = static_cast<double>(counts[0] + counts[1]);
  if (n == 0.0) throw DataError("class balance of an empty table");
  return 100.0 * std::abs(static_cast<double>(counts[0]) - static_cast<double>(counts[1])) / n;
}

}  // namespace synthbench
