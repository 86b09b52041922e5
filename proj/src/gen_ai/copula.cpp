#include "synthbench/gen_ai/copula.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "synthbench/util/error.hpp"

namespace synthbench {
namespace {

const boost::math::normal& standard_normal() {
  static const boost::math::normal n(0.0, 1.0);
  return n;
}

}  // namespace

CopulaMarginal CopulaMarginal::fit(const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() == 0) throw DataError("cannot fit a copula marginal to an empty column");
  std::vector<double> sorted(x.data(), x.data() + x.size());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  CopulaMarginal m;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double rank = static_cast<double>(i) + (static_cast<double>(j - i) + 1.0) / 2.0;
    m.values_.push_back(sorted[i]);
    m.cdf_.push_back(std::clamp(rank / (n + 1.0), 1.0 / (n + 1.0), n / (n + 1.0)));
    i = j;
  }
  return m;
}

double CopulaMarginal::to_score(double v) const {
  double p = 0.0;
  if (v <= values_.front()) {
    p = cdf_.front();
  } else if (v >= values_.back()) {
    p = cdf_.back();
  } else {
    const auto hi = static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), v) - values_.begin());
    const auto lo = hi - 1;
    const double t = (v - values_[lo]) / (values_[hi] - values_[lo]);
    p = cdf_[lo] + t * (cdf_[hi] - cdf_[lo]);
  }
  return boost::math::quantile(standard_normal(), p);
}

double CopulaMarginal::from_score(double z) const {
  if (!std::isfinite(z)) return z > 0 ? values_.back() : values_.front();
  const double p = boost::math::cdf(standard_normal(), z);
  if (p <= cdf_.front()) return values_.front();
  if (p >= cdf_.back()) return values_.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), p) - cdf_.begin());
  const auto lo = hi - 1;
  const double t = (p - cdf_[lo]) / (cdf_[hi] - cdf_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

CopulaTransform CopulaTransform::fit(const Dataset& d) {
  CopulaTransform t;
  for (Index j = 0; j < d.cols(); ++j) {
    if (d.column(j).kind == ColumnKind::Categorical) throw DataError("copula transform needs encoded columns");
    if (d.column(j).kind != ColumnKind::Numeric) continue;
    t.columns_.push_back(j);
    t.marginals_.push_back(CopulaMarginal::fit(d.col(j)));
  }
  return t;
}

Dataset CopulaTransform::forward(const Dataset& d) const {
  Eigen::MatrixXd v = d.values();
  for (std::size_t k = 0; k < columns_.size(); ++k)
    for (Index i = 0; i < v.rows(); ++i) v(i, columns_[k]) = marginals_[k].to_score(v(i, columns_[k]));
  return refresh_bounds(d.with_values(std::move(v)));
}

Dataset CopulaTransform::inverse(const Dataset& scores, const Dataset& schema_source) const {
  Eigen::MatrixXd v = scores.values();
  for (std::size_t k = 0; k < columns_.size(); ++k)
    for (Index i = 0; i < v.rows(); ++i) v(i, columns_[k]) = marginals_[k].from_score(v(i, columns_[k]));
  return schema_source.with_values(std::move(v));
}

}  // namespace synthbench
