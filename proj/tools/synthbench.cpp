#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synthbench/data/csv_io.hpp"
#include "synthbench/featsel/selection.hpp"
#include "synthbench/pipeline/benchmark.hpp"
#include "synthbench/pipeline/plots.hpp"
#include "synthbench/pipeline/registry.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/io.hpp"
#include "synthbench/util/log.hpp"

namespace fs = std::filesystem;
using namespace synthbench;

namespace {

constexpr int kExitFailedMethods = 1;
constexpr int kExitUsage = 2;
constexpr int kExitError = 3;

/// Flags that override the config file. Unset flags keep the file value.
struct Overrides {
  std::string config_path;
  std::optional<std::string> profile;
  std::optional<std::string> dataset;
  std::optional<std::string> target;
  std::optional<Index> subsample;
  std::optional<std::uint64_t> seed;
  std::optional<double> train_fraction;
  std::optional<std::size_t> count;
  std::vector<std::string> methods;
  std::vector<std::string> inject_failure;
  std::optional<std::string> output;
  std::optional<double> ks_threshold;
  std::optional<double> corr_mean;
  std::optional<double> corr_max;
  std::optional<int> trees;
  bool svg = false;
  bool parallel = false;

  RunConfig resolve() const {
    RunConfig c = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
    if (profile) c.profile = parse_profile(*profile);
    if (dataset) c.dataset = *dataset;
    if (target) c.target_column = *target;
    if (subsample) c.subsample = *subsample;
    if (seed) c.seed = *seed;
    if (train_fraction) c.train_fraction = *train_fraction;
    if (count) c.selection_count = *count;
    if (!methods.empty()) c.methods = methods;
    if (!inject_failure.empty()) c.inject_failure = inject_failure;
    if (output) c.output = *output;
    if (ks_threshold) c.metrics.ks_threshold = *ks_threshold;
    if (corr_mean) c.metrics.corr_mean_tolerance = *corr_mean;
    if (corr_max) c.metrics.corr_max_tolerance = *corr_max;
    if (trees) c.classifier.trees = *trees;
    if (svg) c.svg = true;
    if (parallel) c.parallel = true;
    return c;
  }
};

void add_config(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config_path, "YAML run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "master seed");
}

void add_split(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--train-fraction", o.train_fraction, "share of rows used for training");
}

void add_thresholds(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--ks-threshold", o.ks_threshold, "KS statistic above which a column differs");
  cmd->add_option("--corr-mean", o.corr_mean, "mean |correlation difference| allowed");
  cmd->add_option("--corr-max", o.corr_max, "largest |correlation difference| allowed");
  cmd->add_option("--trees", o.trees, "trees in the utility classifier");
}

nlohmann::json provenance_of(const RunConfig& c) { return Provenance{c.seed, c.hash()}.to_json(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic network-traffic data generation and evaluation"};
  app.require_subcommand(1);
  bool verbose = false;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbose, "print progress");
  app.add_flag("-q,--quiet", quiet, "suppress warnings");
  Overrides o;
  std::string input;
  std::string output;
  std::string method;
  std::string synthetic;
  std::string ranking;
  std::string run_dir;

  auto* ingest = app.add_subcommand("ingest", "load, clean, encode and binarize a raw dataset");
  ingest->add_option("--profile", o.profile, "nsl-kdd | cic-ids2017 | generic")->required();
  ingest->add_option("-i,--input", o.dataset, "raw CSV (or directory of CSVs for cic-ids2017)")->required();
  ingest->add_option("-o,--output", output, "cleaned dataset CSV; a schema sidecar is written beside it")->required();
  ingest->add_option("--target", o.target, "label column (generic profile)");
  ingest->add_option("--subsample", o.subsample, "stratified row count");
  add_config(ingest, o);

  auto* select = app.add_subcommand("select-features", "rank features by mutual information and keep the top");
  select->add_option("-i,--input", input, "dataset written by ingest")->required()->check(CLI::ExistingFile);
  select->add_option("-o,--output", output, "reduced dataset CSV")->required();
  select->add_option("--count", o.count, "features to keep (default: top quartile)");
  select->add_option("--ranking", ranking, "ranking CSV (default: beside the output)");
  add_config(select, o);

  auto* gen = app.add_subcommand("generate", "fit one generator on the training partition and sample");
  gen->add_option("-i,--input", input, "reduced dataset")->required()->check(CLI::ExistingFile);
  gen->add_option("-m,--method", method, "generator name")->required();
  gen->add_option("-o,--output", output, "synthetic dataset CSV")->required();
  add_config(gen, o);
  add_split(gen, o);

  auto* eval = app.add_subcommand("evaluate", "score a synthetic table against the real partitions");
  eval->add_option("-r,--real", input, "reduced real dataset")->required()->check(CLI::ExistingFile);
  eval->add_option("-s,--synthetic", synthetic, "synthetic dataset")->required()->check(CLI::ExistingFile);
  eval->add_option("-m,--method", method, "method name for the report")->required();
  eval->add_option("-o,--output", output, "directory for metric artifacts")->required();
  add_config(eval, o);
  add_split(eval, o);
  add_thresholds(eval, o);

  auto* bench = app.add_subcommand("benchmark", "run the full pipeline for a list of methods");
  add_config(bench, o);
  bench->add_option("--profile", o.profile, "nsl-kdd | cic-ids2017 | generic");
  bench->add_option("-d,--dataset", o.dataset, "raw dataset path");
  bench->add_option("--target", o.target, "label column (generic profile)");
  bench->add_option("--subsample", o.subsample, "stratified row count");
  bench->add_option("--count", o.count, "selected feature count");
  bench->add_option("--methods", o.methods, "comma-separated generator names, or 'all'")->delimiter(',');
  bench->add_option("--inject-failure", o.inject_failure, "methods forced to fail")->delimiter(',');
  bench->add_option("-o,--output", o.output, "run directory");
  bench->add_flag("--svg", o.svg, "render SVG plots");
  bench->add_flag("--parallel", o.parallel, "run methods concurrently");
  add_split(bench, o);
  add_thresholds(bench, o);

  auto* report = app.add_subcommand("report", "rebuild the comparison table of a run directory");
  report->add_option("run", run_dir, "run directory")->required();
  report->add_flag("--svg", o.svg, "render SVG plots");

  auto* list = app.add_subcommand("methods", "list the available generators");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }
  if (verbose) set_log_level(LogLevel::Info);
  if (quiet) set_log_level(LogLevel::Quiet);

  try {
    if (*list) {
      for (const auto& m : method_registry())
        std::cout << m.name << "\t" << (m.category == MethodCategory::Statistical ? "statistical" : "ai-based") << "\t"
                  << m.label << "\n";
      return 0;
    }
    if (*ingest) {
      const auto config = o.resolve();
      const auto d = load_input(config);
      write_dataset(d, output, provenance_of(config));
      std::cout << d.rows() << " rows, " << d.cols() << " columns -> " << output << "\n";
      return 0;
    }
    if (*select) {
      const auto config = o.resolve();
      const auto selection = select_features(config, read_dataset(input));
      const fs::path out = output;
      const fs::path rank_path = ranking.empty() ? out.parent_path() / (out.stem().string() + ".mi_ranking.csv")
                                                 : fs::path(ranking);
      const Provenance p{config.seed, config.hash()};
      write_dataset(selection.reduced, out, p.to_json());
      write_file_atomic(rank_path, p.csv_comment() + selection.ranking.to_csv());
      std::cout << selection.reduced.cols() - 1 << " features -> " << output << "\n";
      for (std::size_t i = 0; i < selection.ranking.entries.size() && i < 10; ++i)
        std::cout << "  " << selection.ranking.entries[i].feature << "\t"
                  << format_number(selection.ranking.entries[i].score) << "\n";
      return 0;
    }
    if (*gen) {
      const auto config = o.resolve();
      const auto [train, test] = split_real(config, read_dataset(input));
      const auto g = generate(method, refresh_bounds(train), config.generators, config.seed);
      const Provenance p{config.seed, config.hash()};
      write_dataset(g.data, output, p.to_json());
      if (g.trace) {
        const fs::path out = output;
        write_file_atomic(out.parent_path() / (out.stem().string() + ".loss_trace.csv"),
                          p.csv_comment() + g.trace->to_csv());
      }
      std::cout << g.data.rows() << " synthetic rows -> " << output << "\n";
      return 0;
    }
    if (*eval) {
      const auto config = o.resolve();
      auto [train, test] = split_real(config, read_dataset(input));
      const auto forest = forest_config(config);
      const auto real = prepare_real(std::move(train), std::move(test), forest);
      fs::create_directories(output);
      const auto r = evaluate_synthetic(method, real, read_dataset(synthetic), config.metrics, forest,
                                        Provenance{config.seed, config.hash()}, output);
      std::cout << report_csv_header() << "\n" << report_csv_row(r) << "\n";
      return 0;
    }
    if (*bench) {
      if (o.methods.size() == 1 && o.methods.front() == "all") {
        o.methods.clear();
        for (const auto& m : method_registry()) o.methods.push_back(m.name);
      }
      const auto result = run_benchmark(o.resolve());
      std::cout << read_file(result.directory / "summary.txt");
      return result.all_succeeded() ? 0 : kExitFailedMethods;
    }
    if (*report) {
      const auto c = emit_report(run_dir);
      if (o.svg) render_plots(run_dir);
      std::cout << c.to_text();
      const bool failed = std::any_of(c.rows.begin(), c.rows.end(), [](const auto& r) { return !r.report; });
      return failed ? kExitFailedMethods : 0;
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
