#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace synthbench {

struct Mode {
  double weight = 0.0;
  double mean = 0.0;
  double stdev = 1.0;
};

struct ModeOptions {
  int max_modes = 10;
  /// Modes lighter than this are pruned and the rest renormalized.
  double min_weight = 0.005;
  /// EM runs on at most this many rows (deterministic subsample).
  Eigen::Index fit_rows = 20000;
  std::uint64_t seed = 0;
};

/// Mode-specific normalization of one numeric column: a BIC-selected 1-D
/// Gaussian mixture whose responsible mode encodes each value as
/// (value - mean) / stdev plus the mode index.
class ModeNormalizer {
 public:
  struct Code {
    double alpha = 0.0;
    Eigen::Index mode = 0;
  };

  ModeNormalizer() = default;
  explicit ModeNormalizer(std::vector<Mode> modes);

  static ModeNormalizer fit(const Eigen::Ref<const Eigen::VectorXd>& x, const ModeOptions& options);

  const std::vector<Mode>& modes() const { return modes_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(modes_.size()); }

  /// Mode with the highest posterior weight for v.
  Eigen::Index responsible_mode(double v) const;
  Code encode(double v) const;
  double decode(double alpha, Eigen::Index mode) const;

 private:
  std::vector<Mode> modes_;
};

}  // namespace synthbench
