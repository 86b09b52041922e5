#include "synthbench/utility/utility.hpp"

#include "synthbench/util/error.hpp"
#include "synthbench/util/hash.hpp"

namespace synthbench {

nlohmann::ordered_json Scores::to_json() const {
  nlohmann::ordered_json j;
  j["accuracy"] = accuracy;
  j["precision"] = precision;
  j["recall"] = recall;
  j["f1"] = f1;
  j["confusion"] = {{"tp", confusion.tp}, {"fp", confusion.fp}, {"fn", confusion.fn}, {"tn", confusion.tn}};
  nlohmann::ordered_json undefined = nlohmann::ordered_json::array();
  if (precision_undefined) undefined.push_back("precision");
  if (recall_undefined) undefined.push_back("recall");
  if (f1_undefined) undefined.push_back("f1");
  j["undefined"] = undefined;
  return j;
}

Scores score_confusion(const Confusion& c) {
  Scores s;
  s.confusion = c;
  const auto total = static_cast<double>(c.tp + c.fp + c.fn + c.tn);
  if (total == 0.0) throw DataError("cannot score an empty test set");
  s.accuracy = static_cast<double>(c.tp + c.tn) / total;
  s.precision_undefined = c.tp + c.fp == 0;
  s.recall_undefined = c.tp + c.fn == 0;
  if (!s.precision_undefined) s.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  if (!s.recall_undefined) s.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  s.f1_undefined = 2 * c.tp + c.fp + c.fn == 0;
  if (!s.f1_undefined) s.f1 = 2.0 * static_cast<double>(c.tp) / static_cast<double>(2 * c.tp + c.fp + c.fn);
  return s;
}

Scores score_predictions(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) throw ArgumentError("truth and predictions differ in length");
  Confusion c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == 1) {
      (predicted[i] == 1 ? c.tp : c.fn) += 1;
    } else {
      (predicted[i] == 1 ? c.fp : c.tn) += 1;
    }
  }
  return score_confusion(c);
}

Scores evaluate(const TreeEnsemble& model, const Dataset& test) {
  const auto predicted = model.predict(test);
  std::vector<int> truth(static_cast<std::size_t>(test.rows()));
  for (Index i = 0; i < test.rows(); ++i) {
    const double y = test.values()(i, test.target());
    if (y != 0.0 && y != 1.0) throw DataError("test target at row " + std::to_string(i) + " is not binary");
    truth[static_cast<std::size_t>(i)] = static_cast<int>(y);
  }
  return score_predictions(truth, predicted);
}

nlohmann::ordered_json UtilityResult::to_json() const {
  nlohmann::ordered_json j;
  j["trtr"] = trtr.to_json();
  j["tstr"] = tstr.to_json();
  j["classifier"] = classifier.to_json();
  j["test_fingerprint"] = test_fingerprint;
  return j;
}

namespace {

template <typename Fn>
Scores run_arm(const char* arm, Fn&& fn) {
  try {
    return fn();
  } catch (const DataError& e) {
    throw DataError(std::string(arm) + ": " + e.what());
  } catch (const ArgumentError& e) {
    throw ArgumentError(std::string(arm) + ": " + e.what());
  } catch (const TrainingError& e) {
    throw TrainingError(std::string(arm) + ": " + e.what());
  } catch (const Error& e) {
    throw Error(std::string(arm) + ": " + e.what());
  }
}

}  // namespace

UtilityResult trtr_tstr(const Dataset& real_train, const Dataset& real_test, const Dataset& synth,
                        const ForestConfig& config) {
  if (synth.names() != real_train.names() || synth.target_index() != real_train.target_index())
    throw DataError("synthetic schema does not match the real schema");
  UtilityResult r;
  r.classifier = config;
  r.test_fingerprint = matrix_fingerprint(real_test.values());
  r.trtr = run_arm("TRTR", [&] { return evaluate(TreeEnsemble::train(real_train, config), real_test); });
  r.tstr = run_arm("TSTR", [&] { return evaluate(TreeEnsemble::train(synth, config), real_test); });
  if (matrix_fingerprint(real_test.values()) != r.test_fingerprint)
    throw Error("real test partition changed between the TRTR and TSTR arms");
  return r;
}

UtilityResult trtr_tstr(const Dataset& real, const Dataset& synth, const SplitSpec& split, const ForestConfig& config) {
  const auto [train, test] = stratified_split(real, split);
  return trtr_tstr(train, test, synth, config);
}

}  // namespace synthbench
