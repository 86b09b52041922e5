#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace synthbench {

/// One method's row of the comparison table. Run time is kept apart so
/// that the serialized report is identical across repeated seeded runs.
struct EvalReport {
  std::string method;
  bool ds_valid = false;
  bool corr_similar = false;
  double pd_percent = 0.0;
  double cb_percent = 0.0;
  double trtr_accuracy = 0.0;
  double tstr_accuracy = 0.0;
  std::optional<double> runtime_seconds;

  /// Fields in table order; runtime only when `with_runtime`.
  nlohmann::ordered_json to_json(bool with_runtime = false) const;
  static EvalReport from_json(const nlohmann::ordered_json& j);
};

std::string yes_no(bool v);

/// Header: method,ds,corr,pd_percent,cb_percent,trtr_accuracy,tstr_accuracy
std::string report_csv_header();
std::string report_csv_row(const EvalReport& r);

}  // namespace synthbench
