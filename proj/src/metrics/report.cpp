#include "synthbench/metrics/report.hpp"

#include <cmath>

#include "synthbench/util/error.hpp"
#include "synthbench/util/io.hpp"

namespace synthbench {

std::string yes_no(bool v) { return v ? "Yes" : "No"; }

nlohmann::ordered_json EvalReport::to_json(bool with_runtime) const {
  for (double v : {pd_percent, cb_percent, trtr_accuracy, tstr_accuracy})
    if (!std::isfinite(v)) throw Error("report for " + method + " has a non-finite value");
  nlohmann::ordered_json j;
  j["method"] = method;
  j["ds"] = yes_no(ds_valid);
  j["corr"] = yes_no(corr_similar);
  j["pd_percent"] = pd_percent;
  j["cb_percent"] = cb_percent;
  j["trtr_accuracy"] = trtr_accuracy;
  j["tstr_accuracy"] = tstr_accuracy;
  if (with_runtime && runtime_seconds) j["runtime_seconds"] = *runtime_seconds;
  return j;
}

EvalReport EvalReport::from_json(const nlohmann::ordered_json& j) {
  EvalReport r;
  r.method = j.at("method").get<std::string>();
  r.ds_valid = j.at("ds").get<std::string>() == "Yes";
  r.corr_similar = j.at("corr").get<std::string>() == "Yes";
  r.pd_percent = j.at("pd_percent").get<double>();
  r.cb_percent = j.at("cb_percent").get<double>();
  r.trtr_accuracy = j.at("trtr_accuracy").get<double>();
  r.tstr_accuracy = j.at("tstr_accuracy").get<double>();
  if (j.contains("runtime_seconds")) r.runtime_seconds = j.at("runtime_seconds").get<double>();
  return r;
}

std::string report_csv_header() { return "method,ds,corr,pd_percent,cb_percent,trtr_accuracy,tstr_accuracy"; }

std::string report_csv_row(const EvalReport& r) {
  std::string out;
  append_csv_field(out, r.method);
  out += "," + yes_no(r.ds_valid) + "," + yes_no(r.corr_similar) + "," + format_number(r.pd_percent) + "," +
         format_number(r.cb_percent) + "," + format_number(r.trtr_accuracy) + "," + format_number(r.tstr_accuracy);
  return out;
}

}  // namespace synthbench
