#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "synthbench/data/csv_io.hpp"
#include "synthbench/data/dataset.hpp"
#include "synthbench/featsel/information.hpp"
#include "synthbench/featsel/selection.hpp"
#include "synthbench/gen_ai/bayes_net.hpp"
#include "synthbench/gen_ai/mode_normalizer.hpp"
#include "synthbench/gen_stat/gmm.hpp"
#include "synthbench/metrics/distribution.hpp"
#include "synthbench/nn/mlp.hpp"
#include "synthbench/pipeline/benchmark.hpp"
#include "synthbench/pipeline/config.hpp"
#include "synthbench/pipeline/registry.hpp"
#include "synthbench/util/io.hpp"
#include "synthbench/util/log.hpp"
#include "synthbench/util/random.hpp"

namespace fs = std::filesystem;
using namespace synthbench;

namespace {

constexpr int kSkipped = 77;

enum class Verdict { Pass, Fail, Blocked };

struct Outcome {
  Verdict verdict = Verdict::Fail;
  std::string detail;
};

Outcome pass(std::string d) { return {Verdict::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Verdict::Fail, std::move(d)}; }
Outcome blocked(std::string d) { return {Verdict::Blocked, std::move(d)}; }
Outcome verdict(bool ok, std::string d) { return ok ? pass(std::move(d)) : fail(std::move(d)); }

struct Tally {
  int failed = 0;
  int blocked = 0;

  void record(int id, const std::string& name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "BLOCKED";
    std::cout << "[" << tag << "] criterion " << id << ": " << name << " -- " << o.detail << std::endl;
    if (o.verdict == Verdict::Fail) ++failed;
    if (o.verdict == Verdict::Blocked) ++blocked;
  }
};

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("synthbench_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

/// Random table: numeric and binary features, binary target with exactly
/// `positives` attack rows.
Dataset random_table(Rng& rng, Index rows, Index features, Index positives) {
  Eigen::MatrixXd m(rows, features + 1);
  std::vector<ColumnSchema> schema;
  for (Index j = 0; j < features; ++j) {
    const bool binary = rng.uniform() < 0.3;
    const double scale = std::exp(4.0 * rng.uniform() - 2.0);
    for (Index i = 0; i < rows; ++i) m(i, j) = binary ? (rng.uniform() < 0.4 ? 1.0 : 0.0) : scale * rng.normal();
  }
  std::vector<Index> order(static_cast<std::size_t>(rows));
  std::iota(order.begin(), order.end(), Index{0});
  rng.shuffle(std::span<Index>(order));
  for (Index i = 0; i < rows; ++i) m(order[static_cast<std::size_t>(i)], features) = i < positives ? 1.0 : 0.0;
  for (Index j = 0; j <= features; ++j)
    schema.push_back(infer_numeric_schema(j == features ? "label" : "f" + std::to_string(j), m.col(j)));
  return Dataset(std::move(schema), std::move(m), features);
}

/// Every file under `root` except timings and the config copy (which
/// names the output directory), concatenated in path order.
std::string directory_digest(const fs::path& root) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) {
    const auto name = f.filename().string();
    if (name == "timing.json" || name == "timings.csv" || name == "config.yaml") continue;
    all += fs::relative(f, root).string() + "\n" + read_file(f) + "\n";
  }
  return all;
}

/// Toy-budget configuration of all ten methods on a generated table.
RunConfig core_config(const fs::path& dir) {
  Rng rng(2024);
  const auto base = random_table(rng, 900, 10, 300);
  // class signal so that utility is not degenerate
  Eigen::MatrixXd m = base.values();
  for (Index i = 0; i < m.rows(); ++i) m(i, 0) = rng.normal() + 2.0 * m(i, 10);
  const auto d = refresh_bounds(base.with_values(m));
  write_file_atomic(dir / "table.csv", dataset_to_csv(d));
  RunConfig c = RunConfig::load(fs::path(SYNTHBENCH_CONFIG_DIR) / "nsl-kdd-ai-toy.yaml");
  c.profile = Profile::Generic;
  c.dataset = dir / "table.csv";
  c.methods.clear();
  for (const auto& m : method_registry()) c.methods.push_back(m.name);
  c.seed = 99;
  c.classifier.trees = 15;
  c.generators.tvae = {4, 128, 8, 32, 1e-3, 4};
  c.generators.tabddpm = {20, 4, 128, 32, 1e-3, 4};
  c.generators.ctgan = {4, 128, 16, 32, 8, 0.2, 2e-4, 4};
  c.generators.copulagan = c.generators.ctgan;
  return c;
}

// --- criterion 6 -----------------------------------------------------------

Outcome metric_formula_oracles() {
  Rng rng(6);
  // 25 features + target, one feature shifted far away: 1 of 26 differs.
  auto real = random_table(rng, 400, 25, 200);
  Eigen::MatrixXd shifted = real.values();
  Index moved = -1;
  for (Index j = 0; j < 25 && moved < 0; ++j)
    if (real.schema()[static_cast<std::size_t>(j)].kind == ColumnKind::Numeric) moved = j;
  shifted.col(moved).array() += 1000.0;
  const auto synth = real.with_values(shifted);
  const double expected_pd = 100.0 * 1.0 / 26.0;
  const auto pd = pd_percent(real, synth, {0.10, 50000, false});
  if (std::abs(pd.percent - 3.8462) > 0.01 || std::abs(pd.percent - expected_pd) > 1e-9)
    return fail("one-of-26 PD " + num(pd.percent));

  Eigen::MatrixXd imbalanced(400, 2);
  for (Index i = 0; i < 400; ++i) {
    imbalanced(i, 0) = rng.normal();
    imbalanced(i, 1) = i < 300 ? 0.0 : 1.0;
  }
  const Dataset cb_table({infer_numeric_schema("x", imbalanced.col(0)), infer_numeric_schema("label", imbalanced.col(1))},
                         imbalanced, 1);
  const double cb = class_balance_diff(cb_table);
  if (cb != 50.0) return fail("75/25 CB " + num(cb, 10));

  for (int t = 0; t < 100; ++t) {
    const Index rows = 2 * (10 + static_cast<Index>(rng.index(200)));
    const Index features = 1 + static_cast<Index>(rng.index(12));
    const auto d = random_table(rng, rows, features, rows / 2);
    const double self_pd = pd_percent(d, d, {0.10, 50000, false}).percent;
    const double balanced_cb = class_balance_diff(d);
    if (self_pd != 0.0 || balanced_cb != 0.0)
      return fail("table " + std::to_string(t) + ": pd(d,d)=" + num(self_pd) + " cb=" + num(balanced_cb));
  }
  return pass("PD(1/26)=" + num(pd.percent) + "%, CB(75/25)=" + num(cb, 1) + "%, 100 random tables exact zero");
}

// --- criterion 7 -----------------------------------------------------------

double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale < 1e-7 ? std::abs(a - b) : std::abs(a - b) / scale;
}

std::optional<std::string> gradient_check() {
  using nn::Activation;
  Rng rng(7);
  const std::vector<Activation> kinds{Activation::ReLU, Activation::Tanh, Activation::Sigmoid, Activation::Softmax,
                                      Activation::Identity};
  const double h = 1e-5;
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    nn::MlpSpec spec;
    spec.seed = static_cast<std::uint64_t>(trial);
    const auto layers = 1 + rng.index(3);
    spec.widths.push_back(1 + static_cast<Index>(rng.index(6)));
    for (std::size_t k = 0; k < layers; ++k) {
      spec.widths.push_back(2 + static_cast<Index>(rng.index(6)));
      spec.activations.push_back(kinds[trial < 5 ? static_cast<std::size_t>(trial) : rng.index(kinds.size())]);
    }
    nn::Mlp net(spec);
    Eigen::VectorXd p0(net.parameter_count());
    for (Index i = 0; i < p0.size(); ++i) p0(i) = 0.7 * rng.normal();
    net.set_parameters(p0);
    Eigen::MatrixXd x(4, spec.widths.front());
    Eigen::MatrixXd w(4, spec.widths.back());
    for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
    for (Index i = 0; i < w.size(); ++i) w.data()[i] = rng.normal();
    const auto grads = net.backward(net.forward(x), w);
    const auto flat = grads.flatten();
    auto loss = [&] { return (net.predict(x).array() * w.array()).sum(); };
    for (Index i = 0; i < p0.size(); ++i) {
      Eigen::VectorXd p = p0;
      p(i) += h;
      net.set_parameters(p);
      const double up = loss();
      p(i) -= 2 * h;
      net.set_parameters(p);
      const double fd = (up - loss()) / (2 * h);
      worst = std::max(worst, relative_error(flat(i), fd));
    }
    net.set_parameters(p0);
    for (Index i = 0; i < x.size(); ++i) {
      Eigen::MatrixXd xp = x;
      Eigen::MatrixXd xm = x;
      xp.data()[i] += h;
      xm.data()[i] -= h;
      const double fd = ((net.predict(xp) - net.predict(xm)).array() * w.array()).sum() / (2 * h);
      worst = std::max(worst, relative_error(grads.input.data()[i], fd));
    }
  }
  if (worst > 1e-4) return "gradient rel error " + std::to_string(worst);
  return std::nullopt;
}

std::optional<std::string> kde_check() {
  Rng rng(70);
  Eigen::VectorXd x(100000);
  for (Index i = 0; i < x.size(); ++i) x(i) = rng.normal();
  const auto curve = kde_estimate(x);
  double area = 0.0;
  for (Index i = 1; i < curve.grid.size(); ++i)
    area += 0.5 * (curve.density(i) + curve.density(i - 1)) * (curve.grid(i) - curve.grid(i - 1));
  const boost::math::normal_distribution<double> phi;
  double sup = 0.0;
  for (Index i = 0; i < curve.grid.size(); ++i)
    sup = std::max(sup, std::abs(curve.density(i) - boost::math::pdf(phi, curve.grid(i))));
  if (std::abs(area - 1.0) > 0.01 || sup > 0.01) return "KDE area " + num(area) + " sup error " + num(sup);
  return std::nullopt;
}

std::optional<std::string> em_check() {
  Rng rng(71);
  for (int t = 0; t < 5; ++t) {
    Eigen::MatrixXd x(1500, 3);
    for (Index i = 0; i < x.rows(); ++i) {
      const double shift = (i % 3) * 3.0;
      for (Index j = 0; j < 3; ++j) x(i, j) = rng.normal() + shift * (j == t % 3 ? 1.0 : 0.3);
    }
    GmmOptions options;
    options.seed = static_cast<std::uint64_t>(t);
    options.tolerance = 1e-10;
    WarningCapture quiet;
    const auto fit = fit_gmm(x, 2 + t % 3, options);
    for (std::size_t k = 1; k < fit.log_likelihood.size(); ++k)
      if (fit.log_likelihood[k] < fit.log_likelihood[k - 1] - 1e-9 * std::abs(fit.log_likelihood[k - 1]))
        return "EM log-likelihood fell at iteration " + std::to_string(k);
  }
  return std::nullopt;
}

std::optional<std::string> mi_check() {
  Rng rng(72);
  for (int t = 0; t < 100; ++t) {
    const Index n = 50 + static_cast<Index>(rng.index(500));
    Eigen::VectorXd a(n);
    Eigen::VectorXd b(n);
    for (Index i = 0; i < n; ++i) {
      a(i) = rng.normal();
      b(i) = 0.5 * a(i) + rng.normal();
    }
    const int bins = 2 + static_cast<int>(rng.index(15));
    const auto da = discretize(a, bins);
    const auto db = discretize(b, bins);
    const double ab = mutual_information(da, db).mi;
    const double ba = mutual_information(db, da).mi;
    const double self = mutual_information(da, da).mi;
    if (std::abs(ab - ba) > 1e-12) return "MI asymmetric on pair " + std::to_string(t);
    if (std::abs(self - entropy(da)) > 1e-12) return "MI(X,X) != H(X) on pair " + std::to_string(t);
  }
  return std::nullopt;
}

std::optional<std::string> mode_normalizer_check() {
  Rng rng(73);
  Eigen::VectorXd x(4000);
  for (Index i = 0; i < x.size(); ++i) x(i) = (i % 2 ? 10.0 : -5.0) + (i % 2 ? 2.0 : 0.5) * rng.normal();
  ModeOptions options;
  options.seed = 3;
  const auto norm = ModeNormalizer::fit(x, options);
  double worst = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const auto code = norm.encode(x(i));
    worst = std::max(worst, std::abs(norm.decode(code.alpha, code.mode) - x(i)));
  }
  if (worst > 1e-6) return "mode normalizer round trip error " + std::to_string(worst);
  return std::nullopt;
}

std::optional<std::string> chow_liu_check() {
  Rng rng(74);
  for (int t = 0; t < 10; ++t) {
    const auto d = random_table(rng, 300, 3 + static_cast<Index>(rng.index(8)), 120);
    WarningCapture quiet;
    const auto bn = ChowLiuBn::fit(d, 6, 1.0);
    const auto edges = bn.edges();
    const auto& nodes = bn.nodes();
    if (edges.size() + 1 != nodes.size()) return "tree has " + std::to_string(edges.size()) + " edges";
    std::vector<Index> parent(static_cast<std::size_t>(d.cols()));
    std::iota(parent.begin(), parent.end(), Index{0});
    std::function<Index(Index)> find = [&](Index v) {
      return parent[static_cast<std::size_t>(v)] == v ? v : find(parent[static_cast<std::size_t>(v)]);
    };
    for (const auto& [a, b] : edges) {
      const auto ra = find(a);
      const auto rb = find(b);
      if (ra == rb) return "cycle in Chow-Liu tree";
      parent[static_cast<std::size_t>(ra)] = rb;
    }
    for (const auto& node : nodes)
      for (Index r = 0; r < node.cpt.rows(); ++r)
        if (std::abs(node.cpt.row(r).sum() - 1.0) > 1e-9) return "CPT row does not sum to 1";
  }
  return std::nullopt;
}

Outcome numerical_properties() {
  const std::vector<std::pair<std::string, std::function<std::optional<std::string>()>>> suites{
      {"gradients", gradient_check}, {"kde", kde_check},           {"em", em_check},
      {"mi", mi_check},              {"modes", mode_normalizer_check}, {"chow-liu", chow_liu_check},
  };
  std::string ran;
  for (const auto& [name, run] : suites) {
    if (auto problem = run()) return fail(name + ": " + *problem);
    ran += (ran.empty() ? "" : ", ") + name;
  }
  const auto dir = scratch("determinism");
  auto c = core_config(dir);
  c.output = dir / "first";
  WarningCapture quiet;
  const auto first = run_benchmark(c);
  c.output = dir / "second";
  c.parallel = true;
  run_benchmark(c);
  const auto a = directory_digest(dir / "first");
  const auto b = directory_digest(dir / "second");
  fs::remove_all(dir);
  if (!first.all_succeeded()) return fail("a method failed in the determinism run");
  if (a != b) return fail("repeated seeded benchmark differs");
  return pass(ran + " hold; 10-method seeded benchmark byte-identical across runs (" +
              std::to_string(first.outcomes.size()) + " methods, " + std::to_string(a.size()) + " bytes)");
}

// --- criterion 8 -----------------------------------------------------------

Outcome fault_isolation() {
  const auto dir = scratch("fault");
  auto c = core_config(dir);
  c.output = dir / "run";
  c.inject_failure = {"bn"};
  write_file_atomic(dir / "run.yaml", c.to_yaml());
  const std::string cmd = std::string("\"") + SYNTHBENCH_CLI + "\" -q benchmark -c \"" + (dir / "run.yaml").string() +
                          "\" > \"" + (dir / "stdout.txt").string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  const auto table = c.output / "comparison.csv";
  if (!fs::exists(table)) return fail("no comparison table written");
  std::istringstream in(read_file(table));
  std::string line;
  int rows = 0;
  int dashed = 0;
  bool bn_dashed = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("Method,", 0) == 0) continue;
    ++rows;
    if (line.find("--") != std::string::npos) ++dashed;
    if (line == "Bayesian Network,--,--,--,--,--") bn_dashed = true;
  }
  fs::remove_all(dir);
  return verdict(rows == 10 && dashed == 1 && bn_dashed && exit_code != 0,
                 std::to_string(rows) + " rows, " + std::to_string(dashed) + " marked --, exit code " +
                     std::to_string(exit_code));
}

// --- dataset criteria ------------------------------------------------------

std::optional<fs::path> env_path(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0' || !fs::exists(v)) return std::nullopt;
  return fs::path(v);
}

RunConfig dataset_config(const std::string& file, const fs::path& data, const fs::path& out) {
  auto c = RunConfig::load(fs::path(SYNTHBENCH_CONFIG_DIR) / file);
  c.dataset = data;
  c.output = out;
  return c;
}

const EvalReport* row(const BenchmarkResult& r, const std::string& method) {
  for (const auto& o : r.outcomes)
    if (o.method == method && o.report) return &*o.report;
  return nullptr;
}

double runtime(const BenchmarkResult& r, const std::string& method) {
  for (const auto& o : r.outcomes)
    if (o.method == method) return o.seconds;
  return 0.0;
}

int run_dataset_criteria() {
  Tally tally;
  const auto nsl = env_path("SYNTHBENCH_NSLKDD");
  const auto cic = env_path("SYNTHBENCH_CICIDS2017");
  const std::string no_nsl = "set SYNTHBENCH_NSLKDD to the NSL-KDD training file";
  const std::string no_cic = "set SYNTHBENCH_CICIDS2017 to the CIC-IDS2017 CSV directory";
  const auto dir = scratch("datasets");

  std::optional<Selection> nsl_selection;
  tally.record(1, "feature-selection shape", [&] {
    if (!nsl || !cic) return blocked(!nsl ? no_nsl : no_cic);
    const auto t0 = std::chrono::steady_clock::now();
    const auto nc = dataset_config("nsl-kdd.yaml", *nsl, dir / "nsl");
    nsl_selection = select_features(nc, load_input(nc));
    const double nsl_seconds = seconds_since(t0);
    const auto cc = dataset_config("cic-ids2017.yaml", *cic, dir / "cic");
    const auto cic_cols = select_features(cc, load_input(cc)).reduced.cols();
    const auto nsl_cols = nsl_selection->reduced.cols();
    return verdict(nsl_cols == 26 && cic_cols == 21 && nsl_seconds < 300.0,
                   "NSL-KDD " + std::to_string(nsl_cols) + " columns in " + num(nsl_seconds, 1) + " s, CIC-IDS2017 " +
                       std::to_string(cic_cols) + " columns");
  });

  tally.record(2, "MI ranking", [&] {
    if (!nsl) return blocked(no_nsl);
    if (!nsl_selection) {
      const auto nc = dataset_config("nsl-kdd.yaml", *nsl, dir / "nsl");
      nsl_selection = select_features(nc, load_input(nc));
    }
    const std::set<std::string> published{"src_bytes",       "dst_bytes",
                                          "same_srv_rate",   "diff_srv_rate",
                                          "flag_SF",         "dst_host_srv_count",
                                          "dst_host_same_srv_rate", "logged_in",
                                          "dst_host_serror_rate",   "dst_host_diff_srv_rate"};
    const auto& entries = nsl_selection->ranking.entries;
    int overlap = 0;
    for (std::size_t i = 0; i < 10 && i < entries.size(); ++i) overlap += published.count(entries[i].feature) ? 1 : 0;
    const auto top = entries.empty() ? std::string("none") : entries.front().feature;
    return verdict(top == "src_bytes" && overlap >= 7,
                   "top feature " + top + ", " + std::to_string(overlap) + "/10 published top-10 recovered");
  });

  std::optional<BenchmarkResult> stat;
  tally.record(3, "statistical-method table", [&] {
    if (!nsl || !cic) return blocked(!nsl ? no_nsl : no_cic);
    stat = run_benchmark(dataset_config("nsl-kdd-statistical.yaml", *nsl, dir / "nsl-stat"));
    auto cc = dataset_config("cic-ids2017.yaml", *cic, dir / "cic-smote");
    cc.methods = {"smote"};
    const auto cic_run = run_benchmark(cc);
    std::ostringstream detail;
    bool ok = true;
    double total = 0.0;
    for (const auto* m : {"ros", "smote", "adasyn", "cc", "gmm"}) total += runtime(*stat, m);
    for (const auto* m : {"ros", "smote", "cc"}) {
      const auto* r = row(*stat, m);
      if (!r) {
        detail << m << " failed; ";
        ok = false;
        continue;
      }
      ok = ok && r->cb_percent == 0.0 && r->pd_percent == 0.0 && r->tstr_accuracy >= 0.985 && r->trtr_accuracy >= 0.985;
      detail << m << " CB " << num(r->cb_percent, 2) << " PD " << num(r->pd_percent, 2) << " TSTR "
             << num(r->tstr_accuracy) << "; ";
    }
    const auto* adasyn = row(*stat, "adasyn");
    ok = ok && adasyn && adasyn->cb_percent <= 1.0;
    const auto* smote = row(*stat, "smote");
    const auto* smote_cic = row(cic_run, "smote");
    ok = ok && smote && !smote->ds_valid && smote_cic && smote_cic->ds_valid && total < 1800.0;
    detail << "ADASYN CB " << (adasyn ? num(adasyn->cb_percent, 2) : "--") << "; SMOTE DS NSL "
           << (smote ? yes_no(smote->ds_valid) : "--") << " CIC " << (smote_cic ? yes_no(smote_cic->ds_valid) : "--")
           << "; TRTR " << (smote ? num(smote->trtr_accuracy) : "--") << "; " << num(total, 0) << " s";
    return verdict(ok, detail.str());
  });

  tally.record(4, "GMM degradation", [&] {
    if (!nsl) return blocked(no_nsl);
    if (!stat) stat = run_benchmark(dataset_config("nsl-kdd-statistical.yaml", *nsl, dir / "nsl-stat"));
    const auto* gmm = row(*stat, "gmm");
    if (!gmm) return fail("GMM failed");
    double best = 0.0;
    for (const auto* m : {"ros", "smote", "adasyn", "cc"})
      if (const auto* r = row(*stat, m)) best = std::max(best, r->tstr_accuracy);
    return verdict(gmm->tstr_accuracy <= 0.75 && best - gmm->tstr_accuracy >= 0.2,
                   "GMM TSTR " + num(gmm->tstr_accuracy) + ", best statistical " + num(best));
  });

  tally.record(5, "AI-method regimes", [&] {
    if (!nsl) return blocked(no_nsl);
    auto c = dataset_config("nsl-kdd-ai-toy.yaml", *nsl, dir / "nsl-ai");
    c.methods = {"bn", "ctgan", "copulagan"};
    const auto ai = run_benchmark(c);
    std::ostringstream detail;
    bool ok = true;
    for (const auto* m : {"bn", "ctgan", "copulagan"}) {
      const auto* r = row(ai, m);
      const double seconds = runtime(ai, m);
      const bool gan = std::string(m) != "bn";
      ok = ok && r && r->tstr_accuracy >= 0.85 && (!gan || r->cb_percent <= 20.0) && seconds <= 7200.0;
      detail << m << " TSTR " << (r ? num(r->tstr_accuracy) : "--") << " CB " << (r ? num(r->cb_percent, 2) : "--")
             << " " << num(seconds, 0) << " s; ";
    }
    return verdict(ok, detail.str());
  });

  fs::remove_all(dir);
  if (tally.failed > 0) return 1;
  return tally.blocked > 0 ? kSkipped : 0;
}

int run_core_criteria() {
  Tally tally;
  tally.record(6, "metric formula oracles", metric_formula_oracles);
  tally.record(7, "numerical property suites", numerical_properties);
  tally.record(8, "fault isolation", fault_isolation);
  return tally.failed > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "core";
  set_log_level(LogLevel::Quiet);
  if (mode == "core") return run_core_criteria();
  if (mode == "datasets") return run_dataset_criteria();
  std::cerr << "usage: acceptance core|datasets\n";
  return 2;
}
