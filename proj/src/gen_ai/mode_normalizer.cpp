#include "synthbench/gen_ai/mode_normalizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <span>
#include <string>

#include "synthbench/gen_stat/gmm.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/log.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench {

namespace {
constexpr double kMinStdev = 1e-3;  // in units of the column's standard deviation
}

ModeNormalizer::ModeNormalizer(std::vector<Mode> modes) : modes_(std::move(modes)) {
  if (modes_.empty()) throw ArgumentError("a mode normalizer needs at least one mode");
}

ModeNormalizer ModeNormalizer::fit(const Eigen::Ref<const Eigen::VectorXd>& x, const ModeOptions& options) {
  const Eigen::Index n = x.size();
  if (n == 0) throw DataError("cannot fit modes to an empty column");
  const double mean = x.mean();
  double sd = std::sqrt((x.array() - mean).square().sum() / static_cast<double>(n));
  if (!(sd > 0.0)) return ModeNormalizer({{1.0, mean, 1.0}});

  Eigen::VectorXd sample = x;
  if (n > options.fit_rows) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    Rng rng(options.seed);
    rng.shuffle(std::span<Eigen::Index>(idx));
    sample.resize(options.fit_rows);
    for (Eigen::Index i = 0; i < options.fit_rows; ++i) sample[i] = x[idx[static_cast<std::size_t>(i)]];
  }
  std::set<double> distinct(sample.data(), sample.data() + sample.size());
  const auto k = std::min<Eigen::Index>(options.max_modes, static_cast<Eigen::Index>(distinct.size()));

  Eigen::MatrixXd z = ((sample.array() - mean) / sd).matrix();
  GmmOptions gopt;
  gopt.seed = options.seed;
  gopt.max_iterations = 100;
  gopt.regularization = kMinStdev * kMinStdev;
  // Candidate fits that stop at the iteration cap are still usable mixtures.
  GmmFit fit;
  {
    WarningCapture quiet;
    fit = fit_gmm_bic(z, k, gopt);
  }
  if (!fit.converged) log_info("mode fit stopped at the iteration cap with " + std::to_string(fit.model.components()) + " modes");

  std::vector<Mode> modes;
  double kept = 0.0;
  for (Eigen::Index c = 0; c < fit.model.components(); ++c) {
    const double w = fit.model.weights[c];
    if (w < options.min_weight) continue;
    const double s = std::max(std::sqrt(fit.model.covariances[static_cast<std::size_t>(c)](0, 0)), kMinStdev);
    modes.push_back({w, mean + sd * fit.model.means[static_cast<std::size_t>(c)][0], sd * s});
    kept += w;
  }
  if (modes.empty()) return ModeNormalizer({{1.0, mean, sd}});
  for (auto& m : modes) m.weight /= kept;
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) { return a.mean < b.mean; });
  return ModeNormalizer(std::move(modes));
}

Eigen::Index ModeNormalizer::responsible_mode(double v) const {
  Eigen::Index best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    const auto& m = modes_[k];
    const double a = (v - m.mean) / m.stdev;
    const double score = std::log(m.weight) - std::log(m.stdev) - 0.5 * a * a;
    if (score > best_score) {
      best_score = score;
      best = static_cast<Eigen::Index>(k);
    }
  }
  return best;
}

ModeNormalizer::Code ModeNormalizer::encode(double v) const {
  const auto k = responsible_mode(v);
  const auto& m = modes_[static_cast<std::size_t>(k)];
  return {(v - m.mean) / m.stdev, k};
}

double ModeNormalizer::decode(double alpha, Eigen::Index mode) const {
  const auto& m = modes_.at(static_cast<std::size_t>(mode));
  return m.mean + m.stdev * alpha;
}

}  // namespace synthbench
