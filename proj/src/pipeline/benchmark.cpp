#include "synthbench/pipeline/benchmark.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <future>
#include <iomanip>
#include <sstream>

#include "synthbench/data/csv_io.hpp"
#include "synthbench/data/preprocess.hpp"
#include "synthbench/data/split.hpp"
#include "synthbench/metrics/correlation.hpp"
#include "synthbench/metrics/distribution.hpp"
#include "synthbench/metrics/structure.hpp"
#include "synthbench/pipeline/plots.hpp"
#include "synthbench/pipeline/registry.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/hash.hpp"
#include "synthbench/util/io.hpp"
#include "synthbench/util/log.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

// Sub-seed slots after the ten per-method slots.
constexpr std::uint64_t kSubsampleSlot = 100;
constexpr std::uint64_t kSplitSlot = 101;
constexpr std::uint64_t kForestSlot = 102;

void write_json(const fs::path& path, const Json& j) { write_file_atomic(path, j.dump(2) + "\n"); }

Json read_json(const fs::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed run artifact " + path.string() + ": " + e.what());
  }
}

/// Safe, unique file stem for a column: position prefix plus the name with
/// path-hostile characters replaced.
std::string column_stem(std::size_t position, const std::string& name) {
  std::ostringstream out;
  out << std::setw(3) << std::setfill('0') << position << '_';
  for (const char c : name) {
    const bool safe = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    out << (safe ? c : '_');
  }
  return out.str();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

long peak_rss_kb() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

struct RunContext {
  const RunConfig& config;
  const RealData& real;
  ForestConfig forest;
  Provenance provenance;
  fs::path methods_dir;
};

MethodOutcome run_method(const std::string& method, const RunContext& ctx) {
  MethodOutcome outcome{method, std::nullopt, {}, 0.0};
  const auto dir = ctx.methods_dir / method;
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> warnings;
  {
    WarningCapture capture;
    try {
      if (std::find(ctx.config.inject_failure.begin(), ctx.config.inject_failure.end(), method) !=
          ctx.config.inject_failure.end())
        throw TrainingError("injected failure");
      auto generated = generate(method, ctx.real.train, ctx.config.generators, ctx.config.seed);
      write_dataset(generated.data, dir / "synthetic.csv", ctx.provenance.to_json());
      if (generated.trace)
        write_file_atomic(dir / "loss_trace.csv", ctx.provenance.csv_comment() + generated.trace->to_csv());
      outcome.report = evaluate_synthetic(method, ctx.real, generated.data, ctx.config.metrics, ctx.forest,
                                          ctx.provenance, dir);
    } catch (const std::exception& e) {
      outcome.error = e.what();
      fs::remove(dir / "report.json");
    }
    warnings = capture.messages();
  }
  outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& w : warnings) log_warn(method + ": " + w);
  if (!outcome.report) log_warn(method + " failed: " + outcome.error);

  Json status = ctx.provenance.to_json();
  status["method"] = method;
  status["status"] = outcome.report ? "ok" : "failed";
  if (!outcome.report) status["error"] = outcome.error;
  status["warnings"] = warnings;
  write_json(dir / "status.json", status);

  Json timing = ctx.provenance.to_json();
  timing["method"] = method;
  timing["seconds"] = outcome.seconds;
  timing["process_peak_rss_kb"] = peak_rss_kb();
  write_json(dir / "timing.json", timing);
  return outcome;
}

}  // namespace

std::string Provenance::csv_comment() const {
  return "# seed=" + std::to_string(seed) + " config_sha256=" + config_hash + "\n";
}

Json Provenance::to_json() const {
  Json j;
  j["seed"] = seed;
  j["config_hash"] = config_hash;
  return j;
}

Dataset load_input(const RunConfig& config) {
  LoadOptions options;
  options.target_column = config.target_column;
  auto d = prepare(config.dataset, config.profile, options);
  if (config.subsample && *config.subsample < d.rows())
    d = stratified_subsample(d, *config.subsample, Rng::derive(config.seed, kSubsampleSlot));
  return d;
}

Selection select_features(const RunConfig& config, const Dataset& d) {
  return select_top_quartile(d, config.feature_count());
}

std::pair<Dataset, Dataset> split_real(const RunConfig& config, const Dataset& d) {
  return stratified_split(d, SplitSpec{config.train_fraction, Rng::derive(config.seed, kSplitSlot), true});
}

ForestConfig forest_config(const RunConfig& config) {
  ForestConfig f;
  f.trees = config.classifier.trees;
  f.max_depth = config.classifier.max_depth;
  f.max_bins = config.classifier.max_bins;
  f.seed = Rng::derive(config.seed, kForestSlot);
  return f;
}

RealData prepare_real(Dataset train, Dataset test, const ForestConfig& forest) {
  RealData real{refresh_bounds(train), std::move(test), {}, {}};
  real.test_fingerprint = matrix_fingerprint(real.test.values());
  try {
    real.trtr = evaluate(TreeEnsemble::train(real.train, forest), real.test);
  } catch (const DataError& e) {
    throw DataError(std::string("TRTR: ") + e.what());
  }
  return real;
}

EvalReport evaluate_synthetic(const std::string& method, const RealData& real, const Dataset& synth,
                              const MetricSettings& metrics, const ForestConfig& forest, const Provenance& provenance,
                              const fs::path& dir) {
  const auto structure = data_structure_check(real.train.schema(), synth);
  {
    Json j = provenance.to_json();
    j["valid"] = structure.valid;
    j["findings"] = Json::array();
    for (const auto& f : structure.findings)
      j["findings"].push_back({{"column", f.column}, {"problem", f.problem}, {"offending_rows", f.offending_rows}});
    write_json(dir / "structure.json", j);
  }

  const auto corr = correlation_report(real.train, synth, {metrics.corr_mean_tolerance, metrics.corr_max_tolerance});
  const auto names = real.train.names();
  write_file_atomic(dir / "corr_real.csv", provenance.csv_comment() + correlation_csv(corr.real, names));
  write_file_atomic(dir / "corr_synth.csv", provenance.csv_comment() + correlation_csv(corr.synth, names));
  write_file_atomic(dir / "corr_diff.csv", provenance.csv_comment() + correlation_csv(corr.diff, names));

  const auto pd = pd_percent(real.train, synth, {metrics.ks_threshold, metrics.max_rows, metrics.kde_curves});
  {
    Json j = provenance.to_json();
    j["ks_threshold"] = metrics.ks_threshold;
    j["percent"] = pd.percent;
    j["differing"] = pd.differing;
    j["total"] = pd.total;
    j["mean_abs_corr_diff"] = corr.mean_abs_diff;
    j["max_abs_corr_diff"] = corr.max_abs_diff;
    j["variables"] = Json::array();
    for (std::size_t i = 0; i < pd.variables.size(); ++i) {
      const auto& v = pd.variables[i];
      Json e{{"column", v.column}, {"ks", v.ks}, {"different", v.different}};
      if (metrics.kde_curves) {
        const auto file = "kde/" + column_stem(i, v.column) + ".csv";
        fs::create_directories(dir / "kde");
        write_file_atomic(dir / file, provenance.csv_comment() + kde_pair_csv(v.curves));
        e["kde"] = file;
      }
      j["variables"].push_back(std::move(e));
    }
    write_json(dir / "distribution.json", j);
  }

  UtilityResult utility{real.trtr, {}, forest, real.test_fingerprint};
  try {
    utility.tstr = evaluate(TreeEnsemble::train(synth, forest), real.test);
  } catch (const DataError& e) {
    throw DataError(std::string("TSTR: ") + e.what());
  }
  if (matrix_fingerprint(real.test.values()) != real.test_fingerprint)
    throw Error("real test partition changed between the TRTR and TSTR arms");
  {
    Json j = provenance.to_json();
    const auto u = utility.to_json();
    for (const auto& [k, v] : u.items()) j[k] = v;
    write_json(dir / "utility.json", j);
  }

  EvalReport report;
  report.method = method;
  report.ds_valid = structure.valid;
  report.corr_similar = corr.similar;
  report.pd_percent = pd.percent;
  report.cb_percent = class_balance_diff(synth);
  report.trtr_accuracy = real.trtr.accuracy;
  report.tstr_accuracy = utility.tstr.accuracy;
  Json j = report.to_json();
  const auto stamp = provenance.to_json();
  for (const auto& [k, v] : stamp.items()) j[k] = v;
  write_json(dir / "report.json", j);
  return report;
}

bool BenchmarkResult::all_succeeded() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const MethodOutcome& o) { return o.report.has_value(); });
}

BenchmarkResult run_benchmark(const RunConfig& config) {
  config.validate();
  const Provenance provenance{config.seed, config.hash()};
  const auto out = config.output;
  fs::create_directories(out);
  for (const auto* stale : {"comparison.csv", "comparison.json", "summary.txt"}) fs::remove(out / stale);
  write_file_atomic(out / "config.yaml", provenance.csv_comment() + config.to_yaml());

  auto selection = select_features(config, load_input(config));
  write_file_atomic(out / "mi_ranking.csv", provenance.csv_comment() + selection.ranking.to_csv());
  auto [train, test] = split_real(config, selection.reduced);
  const auto forest = forest_config(config);
  const auto real = prepare_real(std::move(train), std::move(test), forest);
  write_dataset(real.train, out / "data" / "train.csv", provenance.to_json());
  write_dataset(real.test, out / "data" / "test.csv", provenance.to_json());
  {
    Json j = provenance.to_json();
    j["profile"] = std::string(to_string(config.profile));
    j["rows"] = real.train.rows() + real.test.rows();
    j["train_rows"] = real.train.rows();
    j["test_rows"] = real.test.rows();
    j["columns"] = real.train.names();
    j["classifier"] = forest.to_json();
    j["test_fingerprint"] = real.test_fingerprint;
    j["trtr"] = real.trtr.to_json();
    write_json(out / "real.json", j);
  }

  const RunContext ctx{config, real, forest, provenance, out / "methods"};
  BenchmarkResult result{out, {}};
  if (config.parallel) {
    std::vector<std::future<MethodOutcome>> futures;
    for (const auto& m : config.methods)
      futures.push_back(std::async(std::launch::async, [&ctx, m] { return run_method(m, ctx); }));
    for (auto& f : futures) result.outcomes.push_back(f.get());
  } else {
    for (const auto& m : config.methods) result.outcomes.push_back(run_method(m, ctx));
  }

  std::string timings = provenance.csv_comment() + "method,status,seconds\n";
  for (const auto& o : result.outcomes)
    timings += o.method + "," + (o.report ? "ok" : "failed") + "," + format_number(o.seconds) + "\n";
  write_file_atomic(out / "timings.csv", timings);

  emit_report(out);
  if (config.svg) render_plots(out);
  return result;
}

Comparison read_comparison(const fs::path& run_dir) {
  for (const auto* required : {"config.yaml", "real.json"})
    if (!fs::exists(run_dir / required))
      throw DataError("missing run artifact " + (run_dir / required).string());
  const auto config = RunConfig::load(run_dir / "config.yaml");
  const auto real = read_json(run_dir / "real.json");

  Comparison c;
  c.provenance = {real.at("seed").get<std::uint64_t>(), real.at("config_hash").get<std::string>()};
  c.trtr_accuracy = real.at("trtr").at("accuracy").get<double>();
  auto methods = config.methods;
  std::sort(methods.begin(), methods.end(),
            [](const std::string& a, const std::string& b) { return method_position(a) < method_position(b); });
  for (const auto& m : methods) {
    ComparisonRow row{m, method_info(m).label, std::nullopt, "no artifacts"};
    const auto dir = run_dir / "methods" / m;
    if (fs::exists(dir / "status.json")) {
      const auto status = read_json(dir / "status.json");
      row.error = status.value("error", "");
      if (status.at("status") == "ok") {
        if (fs::exists(dir / "report.json")) row.report = EvalReport::from_json(read_json(dir / "report.json"));
        else row.error = "missing report.json";
      }
    }
    c.rows.push_back(std::move(row));
  }
  return c;
}

std::string Comparison::to_csv() const {
  std::string out = provenance.csv_comment();
  out += "# trtr_accuracy=" + fixed(trtr_accuracy, 4) + "\n";
  out += "Method,DS,Corr,PD (%),CB (%),Accuracy (TSTR)\n";
  for (const auto& row : rows) {
    append_csv_field(out, row.label);
    if (row.report) {
      const auto& r = *row.report;
      out += "," + yes_no(r.ds_valid) + "," + yes_no(r.corr_similar) + "," + fixed(r.pd_percent, 2) + "," +
             fixed(r.cb_percent, 2) + "," + fixed(r.tstr_accuracy, 4) + "\n";
    } else {
      out += ",--,--,--,--,--\n";
    }
  }
  return out;
}

Json Comparison::to_json() const {
  Json j = provenance.to_json();
  j["trtr_accuracy"] = trtr_accuracy;
  j["rows"] = Json::array();
  for (const auto& row : rows) {
    const auto& info = method_info(row.method);
    Json r;
    r["method"] = row.method;
    r["label"] = row.label;
    r["category"] = info.category == MethodCategory::Statistical ? "statistical" : "ai";
    r["status"] = row.report ? "ok" : "failed";
    if (row.report) {
      const auto rep = row.report->to_json();
      for (const auto* k : {"ds", "corr", "pd_percent", "cb_percent", "tstr_accuracy"}) r[k] = rep.at(k);
    } else {
      for (const auto* k : {"ds", "corr", "pd_percent", "cb_percent", "tstr_accuracy"}) r[k] = "--";
      r["error"] = row.error;
    }
    j["rows"].push_back(std::move(r));
  }
  return j;
}

std::string Comparison::to_text() const {
  std::ostringstream out;
  out << "Comparison of synthetic data\n";
  out << provenance.csv_comment().substr(2);
  out << "Accuracy (TRTR): " << fixed(trtr_accuracy, 4) << "\n\n";
  const auto line = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                        const std::string& e, const std::string& f) {
    out << std::left << std::setw(20) << a << std::setw(6) << b << std::setw(6) << c << std::right << std::setw(9) << d
        << std::setw(9) << e << std::setw(18) << f << "\n";
  };
  line("Method", "DS", "Corr", "PD (%)", "CB (%)", "Accuracy (TSTR)");
  std::optional<MethodCategory> category;
  for (const auto& row : rows) {
    const auto cat = method_info(row.method).category;
    if (category != cat) {
      out << (cat == MethodCategory::Statistical ? "[statistical]\n" : "[AI-based]\n");
      category = cat;
    }
    if (row.report) {
      const auto& r = *row.report;
      line(row.label, yes_no(r.ds_valid), yes_no(r.corr_similar), fixed(r.pd_percent, 2), fixed(r.cb_percent, 2),
           fixed(r.tstr_accuracy, 4));
    } else {
      line(row.label, "--", "--", "--", "--", "--");
    }
  }
  bool header = false;
  for (const auto& row : rows) {
    if (row.report) continue;
    if (!header) out << "\nFailed methods:\n";
    header = true;
    out << "  " << row.label << ": " << row.error << "\n";
  }
  return out.str();
}

Comparison emit_report(const fs::path& run_dir) {
  const auto c = read_comparison(run_dir);
  write_file_atomic(run_dir / "comparison.csv", c.to_csv());
  write_file_atomic(run_dir / "comparison.json", c.to_json().dump(2) + "\n");
  write_file_atomic(run_dir / "summary.txt", c.to_text());
  return c;
}

}  // namespace synthbench
