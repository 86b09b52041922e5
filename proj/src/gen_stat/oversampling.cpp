#include "synthbench/gen_stat/resample.hpp"

#include <algorithm>
#include <map>

#include "synthbench/data/split.hpp"
#include "synthbench/gen_stat/kmeans.hpp"
#include "synthbench/gen_stat/neighbors.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/log.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench {
namespace {

struct Classes {
  std::vector<Index> minority;
  std::vector<Index> majority;
  double minority_label = 1.0;
};

Classes split_classes(const Dataset& d) {
  auto rows = rows_by_class(d);
  if (rows[0].empty() || rows[1].empty()) throw DataError("balancing needs both classes present");
  Classes c;
  // the larger class is the majority; on a tie class 0 is
  const bool zero_is_minority = rows[0].size() < rows[1].size();
  c.minority = std::move(rows[zero_is_minority ? 0 : 1]);
  c.majority = std::move(rows[zero_is_minority ? 1 : 0]);
  c.minority_label = zero_is_minority ? 0.0 : 1.0;
  return c;
}

Dataset append_rows(const Dataset& d, const Eigen::MatrixXd& extra) {
  Eigen::MatrixXd out(d.rows() + extra.rows(), d.cols());
  out.topRows(d.rows()) = d.values();
  out.bottomRows(extra.rows()) = extra;
  return d.with_values(std::move(out));
}

Eigen::MatrixXd scaled_features(const Dataset& d) {
  const Eigen::MatrixXd f = d.feature_matrix();
  return MinMaxScaler::fit(f).transform(f);
}

Index effective_k(Index k, Index minority) {
  if (k < 1) throw ArgumentError("neighbour count must be at least 1");
  if (minority < 2) throw DataError("interpolation needs at least 2 minority rows");
  if (k > minority - 1) {
    log_warn("minority class has " + std::to_string(minority) + " rows; reducing k from " + std::to_string(k) +
             " to " + std::to_string(minority - 1));
    return minority - 1;
  }
  return k;
}

/// Interpolates `bases` (positions into cls.minority) towards random members
/// of their k nearest minority neighbours.
Eigen::MatrixXd interpolate(const Dataset& d, const Classes& cls, const std::vector<Index>& bases, Index k,
                            Rng& rng) {
  const Eigen::MatrixXd scaled = scaled_features(d);
  Eigen::MatrixXd minority_scaled(static_cast<Index>(cls.minority.size()), scaled.cols());
  for (std::size_t r = 0; r < cls.minority.size(); ++r)
    minority_scaled.row(static_cast<Index>(r)) = scaled.row(cls.minority[r]);

  std::vector<Index> distinct = bases;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const auto table = knn_self(minority_scaled, distinct, k);
  std::map<Index, Index> row_of;
  for (std::size_t r = 0; r < distinct.size(); ++r) row_of[distinct[r]] = static_cast<Index>(r);

  const auto features = d.feature_indices();
  Eigen::MatrixXd out(static_cast<Index>(bases.size()), d.cols());
  for (std::size_t s = 0; s < bases.size(); ++s) {
    const Index base = cls.minority[static_cast<std::size_t>(bases[s])];
    const Index nn_pos = table(row_of[bases[s]], static_cast<Index>(rng.index(static_cast<std::uint64_t>(k))));
    const Index nn = cls.minority[static_cast<std::size_t>(nn_pos)];
    const double u = rng.uniform();
    const auto row = static_cast<Index>(s);
    for (const Index j : features) out(row, j) = d.values()(base, j) + u * (d.values()(nn, j) - d.values()(base, j));
    out(row, d.target()) = cls.minority_label;
  }
  return out;
}

}  // namespace

Dataset ros_balance(const Dataset& d, std::uint64_t seed) {
  const auto cls = split_classes(d);
  const auto need = static_cast<Index>(cls.majority.size() - cls.minority.size());
  Rng rng(seed);
  Eigen::MatrixXd extra(need, d.cols());
  for (Index s = 0; s < need; ++s)
    extra.row(s) = d.values().row(cls.minority[rng.index(cls.minority.size())]);
  return append_rows(d, extra);
}

Dataset smote_balance(const Dataset& d, Index k, std::uint64_t seed) {
  const auto cls = split_classes(d);
  const auto need = static_cast<Index>(cls.majority.size() - cls.minority.size());
  if (need == 0) return d;
  k = effective_k(k, static_cast<Index>(cls.minority.size()));
  Rng rng(seed);
  std::vector<Index> bases(static_cast<std::size_t>(need));
  for (auto& b : bases) b = static_cast<Index>(rng.index(cls.minority.size()));
  return append_rows(d, interpolate(d, cls, bases, k, rng));
}

Eigen::VectorXd adasyn_difficulty(const Dataset& d, Index k) {
  const auto cls = split_classes(d);
  if (k < 1 || k > d.rows() - 1) throw ArgumentError("invalid neighbour count " + std::to_string(k));
  const auto table = knn_self(scaled_features(d), cls.minority, k);
  const auto y = d.col(d.target());
  Eigen::VectorXd ratio(static_cast<Index>(cls.minority.size()));
  for (Index r = 0; r < ratio.size(); ++r) {
    Index majority = 0;
    for (Index j = 0; j < k; ++j) majority += y[table(r, j)] != cls.minority_label;
    ratio[r] = static_cast<double>(majority) / static_cast<double>(k);
  }
  return ratio;
}

Dataset adasyn_balance(const Dataset& d, Index k, std::uint64_t seed) {
  const auto cls = split_classes(d);
  const auto need = static_cast<Index>(cls.majority.size() - cls.minority.size());
  if (need == 0) return d;
  const Index k_interp = effective_k(k, static_cast<Index>(cls.minority.size()));
  Eigen::VectorXd ratio = adasyn_difficulty(d, k);
  if (!(ratio.sum() > 0.0)) {
    log_warn("no minority row has majority neighbours; ADASYN falls back to uniform quotas");
    ratio.setOnes();
  }
  const auto quotas = largest_remainder(std::span<const double>(ratio.data(), static_cast<std::size_t>(ratio.size())), need);
  std::vector<Index> bases;
  bases.reserve(static_cast<std::size_t>(need));
  for (std::size_t r = 0; r < quotas.size(); ++r) bases.insert(bases.end(), static_cast<std::size_t>(quotas[r]), static_cast<Index>(r));
  Rng rng(seed);
  return append_rows(d, interpolate(d, cls, bases, k_interp, rng));
}

Dataset cluster_centroid_balance(const Dataset& d, std::uint64_t seed) {
  const auto cls = split_classes(d);
  const auto k = static_cast<Index>(cls.minority.size());
  if (cls.majority.size() == cls.minority.size()) return d;
  const auto features = d.feature_indices();
  Eigen::MatrixXd maj(static_cast<Index>(cls.majority.size()), static_cast<Index>(features.size()));
  for (std::size_t r = 0; r < cls.majority.size(); ++r)
    for (std::size_t j = 0; j < features.size(); ++j)
      maj(static_cast<Index>(r), static_cast<Index>(j)) = d.values()(cls.majority[r], features[j]);
  const auto scaler = MinMaxScaler::fit(maj);
  const auto km = kmeans(scaler.transform(maj), k, {300, 1e-4, seed});
  const Eigen::MatrixXd centers = scaler.inverse(km.centers);

  Eigen::MatrixXd out(2 * k, d.cols());
  for (Index r = 0; r < k; ++r) out.row(r) = d.values().row(cls.minority[static_cast<std::size_t>(r)]);
  for (Index r = 0; r < k; ++r) {
    for (std::size_t j = 0; j < features.size(); ++j) out(k + r, features[j]) = centers(r, static_cast<Index>(j));
    out(k + r, d.target()) = 1.0 - cls.minority_label;
  }
  return d.with_values(std::move(out));
}

Dataset gmm_fit_sample(const Dataset& d, Index max_components, std::uint64_t seed, GmmOptions options) {
  const auto rows = rows_by_class(d);
  for (int c = 0; c < 2; ++c)
    if (rows[c].size() < 2) throw DataError("GMM needs at least 2 rows of class " + std::to_string(c));
  const auto features = d.feature_indices();
  const Index per_class = (d.rows() + 1) / 2;
  Eigen::MatrixXd out(2 * per_class, d.cols());
  for (int c = 0; c < 2; ++c) {
    Eigen::MatrixXd x(static_cast<Index>(rows[c].size()), static_cast<Index>(features.size()));
    for (std::size_t r = 0; r < rows[c].size(); ++r)
      for (std::size_t j = 0; j < features.size(); ++j)
        x(static_cast<Index>(r), static_cast<Index>(j)) = d.values()(rows[c][r], features[j]);
    const Eigen::RowVectorXd mean = x.colwise().mean();
    Eigen::RowVectorXd sd = ((x.rowwise() - mean).colwise().squaredNorm() / static_cast<double>(x.rows())).cwiseSqrt();
    for (Index j = 0; j < sd.size(); ++j)
      if (!(sd[j] > 0.0)) sd[j] = 1.0;
    const Eigen::MatrixXd z = (x.rowwise() - mean).array().rowwise() / sd.array();
    options.seed = Rng::derive(seed, static_cast<std::uint64_t>(2 * c));
    const auto fit = fit_gmm_bic(z, max_components, options);
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(2 * c + 1)));
    const Eigen::MatrixXd s = (sample_gmm(fit.model, per_class, rng).array().rowwise() * sd.array()).matrix().rowwise() + mean;
    for (Index r = 0; r < per_class; ++r) {
      const Index row = c * per_class + r;
      for (std::size_t j = 0; j < features.size(); ++j) out(row, features[j]) = s(r, static_cast<Index>(j));
      out(row, d.target()) = static_cast<double>(c);
    }
  }
  return d.with_values(std::move(out));
}

}  // namespace synthbench
