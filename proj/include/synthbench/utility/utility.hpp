#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "synthbench/data/dataset.hpp"
#include "synthbench/data/split.hpp"
#include "synthbench/utility/forest.hpp"

namespace synthbench {

struct Confusion {
  Index tp = 0;
  Index fp = 0;
  Index fn = 0;
  Index tn = 0;
};

/// Binary scores with attack (1) as the positive class. An undefined
/// ratio is reported as 0 and flagged.
struct Scores {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  Confusion confusion;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;

  nlohmann::ordered_json to_json() const;
};

Scores score_confusion(const Confusion& c);
Scores score_predictions(std::span<const int> truth, std::span<const int> predicted);

/// Scores the model on `test` (schema must match the training schema).
Scores evaluate(const TreeEnsemble& model, const Dataset& test);

struct UtilityResult {
  Scores trtr;
  Scores tstr;
  ForestConfig classifier;
  /// SHA-256 of the real test partition both arms were scored on.
  std::string test_fingerprint;

  nlohmann::ordered_json to_json() const;
};

/// TRTR trains on `real_train`, TSTR on all of `synth`; both are scored on
/// `real_test` with the same classifier configuration and seed.
UtilityResult trtr_tstr(const Dataset& real_train, const Dataset& real_test, const Dataset& synth,
                        const ForestConfig& config);

/// Splits `real` once with `split`, then as above.
UtilityResult trtr_tstr(const Dataset& real, const Dataset& synth, const SplitSpec& split, const ForestConfig& config);

}  // namespace synthbench
