#include "synthbench/metrics/correlation.hpp"

#include <cmath>

#include "synthbench/util/error.hpp"
#include "synthbench/util/io.hpp"
#include "synthbench/util/log.hpp"

namespace synthbench {

Eigen::MatrixXd abs_correlation(const Dataset& d) {
  if (d.rows() == 0) throw DataError("cannot correlate an empty table");
  const Eigen::MatrixXd centered = d.values().rowwise() - d.values().colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered;
  Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
  for (Index j = 0; j < d.cols(); ++j)
    if (!(sd[j] > 0.0)) log_warn("column '" + d.column(j).name + "' is constant; its correlations are taken as 0");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d.cols(), d.cols());
  for (Index a = 0; a < d.cols(); ++a)
    for (Index b = 0; b < d.cols(); ++b)
      if (sd[a] > 0.0 && sd[b] > 0.0) out(a, b) = std::min(1.0, std::abs(cov(a, b)) / (sd[a] * sd[b]));
  return out;
}

CorrelationReport correlation_report(const Dataset& real, const Dataset& synth, const CorrelationOptions& options) {
  if (real.names() != synth.names()) throw DataError("real and synthetic tables have different columns");
  CorrelationReport r;
  r.real = abs_correlation(real);
  r.synth = abs_correlation(synth);
  r.diff = (r.real - r.synth).cwiseAbs();
  const Index p = r.diff.rows();
  if (p > 1) {
    r.mean_abs_diff = (r.diff.sum() - r.diff.trace()) / static_cast<double>(p * (p - 1));
    for (Index a = 0; a < p; ++a)
      for (Index b = 0; b < p; ++b)
        if (a != b) r.max_abs_diff = std::max(r.max_abs_diff, r.diff(a, b));
  }
  r.similar = r.mean_abs_diff <= options.mean_tolerance && r.max_abs_diff <= options.max_tolerance;
  return r;
}

std::string correlation_csv(const Eigen::MatrixXd& m, const std::vector<std::string>& names) {
  std::string out = "column";
  for (const auto& n : names) {
    out += ",";
    append_csv_field(out, n);
  }
  out += "\n";
  for (Index a = 0; a < m.rows(); ++a) {
    append_csv_field(out, names[static_cast<std::size_t>(a)]);
    for (Index b = 0; b < m.cols(); ++b) out += "," + format_number(m(a, b));
    out += "\n";
  }
  return out;
}

}  // namespace synthbench
