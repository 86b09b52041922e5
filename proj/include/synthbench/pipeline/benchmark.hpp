#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "synthbench/data/dataset.hpp"
#include "synthbench/featsel/selection.hpp"
#include "synthbench/metrics/report.hpp"
#include "synthbench/pipeline/config.hpp"
#include "synthbench/utility/forest.hpp"
#include "synthbench/utility/utility.hpp"

namespace synthbench {

/// Master seed and config hash stamped into every artifact.
struct Provenance {
  std::uint64_t seed = 0;
  std::string config_hash;

  /// "# seed=<seed> config_sha256=<hash>" line that opens CSV artifacts.
  std::string csv_comment() const;
  nlohmann::ordered_json to_json() const;
};

/// Run stages shared by the benchmark and the single-step commands. Each
/// draws its own sub-seed from the master seed.
Dataset load_input(const RunConfig& config);
Selection select_features(const RunConfig& config, const Dataset& d);
std::pair<Dataset, Dataset> split_real(const RunConfig& config, const Dataset& d);
ForestConfig forest_config(const RunConfig& config);

/// Real data every method is compared against.
struct RealData {
  Dataset train;  // bounds refreshed from the training rows
  Dataset test;
  Scores trtr;
  std::string test_fingerprint;
};

/// Trains the TRTR arm once and fixes the test fingerprint.
RealData prepare_real(Dataset train, Dataset test, const ForestConfig& forest);

/// Fidelity, balance and TSTR for one synthetic table. Writes structure,
/// correlation, distribution, utility and report artifacts into `dir`.
EvalReport evaluate_synthetic(const std::string& method, const RealData& real, const Dataset& synth,
                              const MetricSettings& metrics, const ForestConfig& forest, const Provenance& provenance,
                              const std::filesystem::path& dir);

struct MethodOutcome {
  std::string method;
  std::optional<EvalReport> report;  // nullopt when the method failed
  std::string error;
  double seconds = 0.0;
};

struct BenchmarkResult {
  std::filesystem::path directory;
  std::vector<MethodOutcome> outcomes;

  bool all_succeeded() const;
};

/// Loads, selects, splits, then generates and evaluates every configured
/// method under `config.output`. A failing method is recorded and the run
/// continues; the comparison table is always written.
BenchmarkResult run_benchmark(const RunConfig& config);

struct ComparisonRow {
  std::string method;
  std::string label;
  std::optional<EvalReport> report;
  std::string error;  // failed rows only
};

struct Comparison {
  Provenance provenance;
  double trtr_accuracy = 0.0;
  std::vector<ComparisonRow> rows;  // statistical first, then AI-based

  /// Method,DS,Corr,PD (%),CB (%),Accuracy (TSTR) with the provenance and
  /// the TRTR accuracy in the leading comment block; failed cells "--".
  std::string to_csv() const;
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

/// Assembles the comparison table from a run directory. Throws DataError
/// when the run artifacts are missing.
Comparison read_comparison(const std::filesystem::path& run_dir);

/// Writes comparison.csv, comparison.json and summary.txt; nothing is
/// written when the run artifacts are missing.
Comparison emit_report(const std::filesystem::path& run_dir);

}  // namespace synthbench
