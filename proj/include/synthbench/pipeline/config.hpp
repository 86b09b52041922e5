#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "synthbench/data/csv_io.hpp"

namespace synthbench {

struct GanSettings {
  int epochs = 300;
  Index batch = 512;
  Index noise_dim = 64;
  Index hidden = 128;
  Index pac = 8;
  double tau = 0.2;
  double learning_rate = 2e-4;
  Index max_steps_per_epoch = 0;  // 0: a full pass over the rows
  bool operator==(const GanSettings&) const = default;
};

struct VaeSettings {
  int epochs = 300;
  Index batch = 512;
  Index latent_dim = 16;
  Index hidden = 128;
  double learning_rate = 1e-3;
  Index max_steps_per_epoch = 0;
  bool operator==(const VaeSettings&) const = default;
};

struct DiffusionSettings {
  int steps = 100;
  int epochs = 1000;
  Index batch = 512;
  Index hidden = 256;
  double learning_rate = 1e-3;
  Index max_steps_per_epoch = 0;
  bool operator==(const DiffusionSettings&) const = default;
};

struct GeneratorSettings {
  Index smote_k = 5;
  Index adasyn_k = 5;
  Index gmm_max_components = 10;
  int bn_bins = 8;
  double bn_alpha = 1.0;
  VaeSettings tvae;
  GanSettings ctgan;
  GanSettings copulagan;
  DiffusionSettings tabddpm;
  bool operator==(const GeneratorSettings&) const = default;
};

struct MetricSettings {
  double ks_threshold = 0.10;
  double corr_mean_tolerance = 0.05;
  double corr_max_tolerance = 0.25;
  Index max_rows = 50000;
  bool kde_curves = true;
  bool operator==(const MetricSettings&) const = default;
};

struct ClassifierSettings {
  int trees = 100;
  int max_depth = 16;
  int max_bins = 256;
  bool operator==(const ClassifierSettings&) const = default;
};

/// Everything that determines a benchmark run.
struct RunConfig {
  Profile profile = Profile::NslKdd;
  std::filesystem::path dataset;
  std::optional<std::string> target_column;  // generic profile only
  std::optional<Index> subsample;
  std::optional<std::size_t> selection_count;  // default depends on the profile
  double train_fraction = 0.8;
  std::uint64_t seed = 42;
  std::filesystem::path output = "runs/latest";
  std::vector<std::string> methods;
  /// Methods forced to fail after generation starts (fault-isolation drills).
  std::vector<std::string> inject_failure;
  GeneratorSettings generators;
  MetricSettings metrics;
  ClassifierSettings classifier;
  bool svg = false;
  /// Run methods concurrently; results are identical to a sequential run.
  bool parallel = false;

  bool operator==(const RunConfig&) const = default;

  std::string to_yaml() const;
  static RunConfig from_yaml(const std::string& text);
  static RunConfig load(const std::filesystem::path& path);

  /// SHA-256 of the YAML form without the output directory and the
  /// parallel switch, neither of which changes any result.
  std::string hash() const;
  /// Throws ArgumentError on an empty or unknown method list and on
  /// out-of-range settings.
  void validate() const;
  /// Selected feature count: the configured one, else 25 for NSL-KDD and
  /// the top quartile otherwise (nullopt).
  std::optional<std::size_t> feature_count() const;
};

}  // namespace synthbench
