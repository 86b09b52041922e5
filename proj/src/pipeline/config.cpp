#include "synthbench/pipeline/config.hpp"

#include <algorithm>
#include <set>

#include <yaml-cpp/yaml.h>

#include "synthbench/pipeline/registry.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/hash.hpp"
#include "synthbench/util/io.hpp"

namespace synthbench {

namespace {

constexpr std::size_t kNslKddFeatureCount = 25;

void key(YAML::Emitter& e, const char* name, const std::string& value, const char* comment = nullptr) {
  e << YAML::Key << name << YAML::Value << value;
  if (comment) e << YAML::Comment(comment);
}

void key(YAML::Emitter& e, const char* name, double value, const char* comment = nullptr) {
  key(e, name, format_number(value), comment);
}

template <typename Int>
  requires std::is_integral_v<Int>
void key(YAML::Emitter& e, const char* name, Int value, const char* comment = nullptr) {
  key(e, name, std::to_string(value), comment);
}

void key_bool(YAML::Emitter& e, const char* name, bool value, const char* comment = nullptr) {
  key(e, name, std::string(value ? "true" : "false"), comment);
}

void key_null(YAML::Emitter& e, const char* name, const char* comment = nullptr) {
  e << YAML::Key << name << YAML::Value << YAML::Null;
  if (comment) e << YAML::Comment(comment);
}

void emit_gan(YAML::Emitter& e, const char* name, const GanSettings& g) {
  e << YAML::Key << name << YAML::Value << YAML::BeginMap;
  key(e, "epochs", g.epochs);
  key(e, "batch", g.batch, "multiple of pac, at least 32");
  key(e, "noise_dim", g.noise_dim);
  key(e, "hidden", g.hidden);
  key(e, "pac", g.pac, "samples judged jointly by the discriminator");
  key(e, "tau", g.tau, "Gumbel-softmax temperature");
  key(e, "learning_rate", g.learning_rate);
  key(e, "max_steps_per_epoch", g.max_steps_per_epoch, "0: one full pass over the rows");
  e << YAML::EndMap;
}

void emit_strings(YAML::Emitter& e, const char* name, const std::vector<std::string>& v) {
  e << YAML::Key << name << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& s : v) e << s;
  e << YAML::EndSeq;
}

/// Rejects keys outside `allowed` so that typos do not silently fall back to defaults.
void check_keys(const YAML::Node& n, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!n) return;
  if (!n.IsMap()) throw ArgumentError("config section '" + where + "' must be a mapping");
  for (const auto& kv : n) {
    const auto k = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw ArgumentError("unknown config key '" + (where.empty() ? k : where + "." + k) + "'");
  }
}

template <typename T>
void read(const YAML::Node& n, const char* name, T& out) {
  const auto v = n[name];
  if (!v || v.IsNull()) return;
  try {
    if constexpr (std::is_same_v<T, double>) {
      double d = 0.0;
      if (!parse_number(v.as<std::string>(), d)) throw YAML::Exception(v.Mark(), "not a number");
      out = d;
    } else {
      out = v.as<T>();
    }
  } catch (const YAML::Exception&) {
    throw ArgumentError(std::string("config key '") + name + "' has an invalid value");
  }
}

template <typename T>
void read_optional(const YAML::Node& n, const char* name, std::optional<T>& out) {
  const auto v = n[name];
  if (!v || v.IsNull()) {
    out.reset();
    return;
  }
  T value{};
  read(n, name, value);
  out = value;
}

void read_gan(const YAML::Node& n, const std::string& where, GanSettings& g) {
  check_keys(n, {"epochs", "batch", "noise_dim", "hidden", "pac", "tau", "learning_rate", "max_steps_per_epoch"}, where);
  if (!n) return;
  read(n, "epochs", g.epochs);
  read(n, "batch", g.batch);
  read(n, "noise_dim", g.noise_dim);
  read(n, "hidden", g.hidden);
  read(n, "pac", g.pac);
  read(n, "tau", g.tau);
  read(n, "learning_rate", g.learning_rate);
  read(n, "max_steps_per_epoch", g.max_steps_per_epoch);
}

std::vector<std::string> read_strings(const YAML::Node& n, const char* name) {
  std::vector<std::string> out;
  const auto v = n[name];
  if (!v || v.IsNull()) return out;
  if (!v.IsSequence()) throw ArgumentError(std::string("config key '") + name + "' must be a list");
  for (const auto& s : v) out.push_back(s.as<std::string>());
  return out;
}

std::string emit(const RunConfig& c, bool with_execution) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "dataset" << YAML::Value << YAML::BeginMap;
  key(e, "profile", std::string(to_string(c.profile)), "nsl-kdd | cic-ids2017 | generic");
  key(e, "path", c.dataset.generic_string(), "file, or directory of CSVs for cic-ids2017");
  if (c.target_column) key(e, "target_column", *c.target_column);
  else key_null(e, "target_column", "generic profile: label column (default label/target/class, else last)");
  if (c.subsample) key(e, "subsample", *c.subsample);
  else key_null(e, "subsample", "stratified row count; null keeps every row");
  e << YAML::EndMap;

  e << YAML::Key << "selection" << YAML::Value << YAML::BeginMap;
  if (c.selection_count) key(e, "count", *c.selection_count);
  else key_null(e, "count", "null: 25 for nsl-kdd, else ceil(features / 4)");
  e << YAML::EndMap;

  e << YAML::Key << "split" << YAML::Value << YAML::BeginMap;
  key(e, "train_fraction", c.train_fraction, "stratified by class");
  e << YAML::EndMap;

  key(e, "seed", c.seed, "master seed; every method derives its own");
  if (with_execution) {
    key(e, "output", c.output.generic_string());
    key_bool(e, "parallel", c.parallel, "run methods concurrently");
  }
  emit_strings(e, "methods", c.methods);
  emit_strings(e, "inject_failure", c.inject_failure);

  const auto& g = c.generators;
  e << YAML::Key << "generators" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "smote" << YAML::Value << YAML::BeginMap;
  key(e, "k", g.smote_k);
  e << YAML::EndMap;
  e << YAML::Key << "adasyn" << YAML::Value << YAML::BeginMap;
  key(e, "k", g.adasyn_k);
  e << YAML::EndMap;
  e << YAML::Key << "gmm" << YAML::Value << YAML::BeginMap;
  key(e, "max_components", g.gmm_max_components, "per class, chosen by BIC");
  e << YAML::EndMap;
  e << YAML::Key << "bn" << YAML::Value << YAML::BeginMap;
  key(e, "bins", g.bn_bins, "quantile bins per numeric column");
  key(e, "alpha", g.bn_alpha, "Laplace smoothing");
  e << YAML::EndMap;
  e << YAML::Key << "tvae" << YAML::Value << YAML::BeginMap;
  key(e, "epochs", g.tvae.epochs);
  key(e, "batch", g.tvae.batch);
  key(e, "latent_dim", g.tvae.latent_dim);
  key(e, "hidden", g.tvae.hidden);
  key(e, "learning_rate", g.tvae.learning_rate);
  key(e, "max_steps_per_epoch", g.tvae.max_steps_per_epoch, "0: one full pass over the rows");
  e << YAML::EndMap;
  e << YAML::Key << "tabddpm" << YAML::Value << YAML::BeginMap;
  key(e, "steps", g.tabddpm.steps, "diffusion steps T");
  key(e, "epochs", g.tabddpm.epochs);
  key(e, "batch", g.tabddpm.batch);
  key(e, "hidden", g.tabddpm.hidden);
  key(e, "learning_rate", g.tabddpm.learning_rate);
  key(e, "max_steps_per_epoch", g.tabddpm.max_steps_per_epoch, "0: one full pass over the rows");
  e << YAML::EndMap;
  emit_gan(e, "ctgan", g.ctgan);
  emit_gan(e, "copulagan", g.copulagan);
  e << YAML::EndMap;

  const auto& m = c.metrics;
  e << YAML::Key << "metrics" << YAML::Value << YAML::BeginMap;
  key(e, "ks_threshold", m.ks_threshold, "a column differs when KS D exceeds this");
  key(e, "corr_mean_tolerance", m.corr_mean_tolerance, "mean |corr diff| allowed");
  key(e, "corr_max_tolerance", m.corr_max_tolerance, "largest |corr diff| allowed");
  key(e, "max_rows", m.max_rows, "rows per side for KS and KDE");
  key_bool(e, "kde_curves", m.kde_curves, "write per-column density CSVs");
  e << YAML::EndMap;

  e << YAML::Key << "classifier" << YAML::Value << YAML::BeginMap;
  key(e, "trees", c.classifier.trees);
  key(e, "max_depth", c.classifier.max_depth);
  key(e, "max_bins", c.classifier.max_bins, "candidate cut points for many-valued features");
  e << YAML::EndMap;

  e << YAML::Key << "plots" << YAML::Value << YAML::BeginMap;
  key_bool(e, "svg", c.svg, "render density and heatmap SVGs");
  e << YAML::EndMap;
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace

std::string RunConfig::to_yaml() const { return emit(*this, true); }

RunConfig RunConfig::from_yaml(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ArgumentError(std::string("config is not valid YAML: ") + e.what());
  }
  RunConfig c;
  if (!root || root.IsNull()) return c;
  check_keys(root, {"dataset", "selection", "split", "seed", "output", "parallel", "methods", "inject_failure", "generators",
                    "metrics", "classifier", "plots"},
             "");
  if (const auto d = root["dataset"]) {
    check_keys(d, {"profile", "path", "target_column", "subsample"}, "dataset");
    if (d["profile"]) c.profile = parse_profile(d["profile"].as<std::string>());
    if (d["path"] && !d["path"].IsNull()) c.dataset = d["path"].as<std::string>();
    read_optional(d, "target_column", c.target_column);
    read_optional(d, "subsample", c.subsample);
  }
  if (const auto s = root["selection"]) {
    check_keys(s, {"count"}, "selection");
    read_optional(s, "count", c.selection_count);
  }
  if (const auto s = root["split"]) {
    check_keys(s, {"train_fraction"}, "split");
    read(s, "train_fraction", c.train_fraction);
  }
  read(root, "seed", c.seed);
  if (root["output"] && !root["output"].IsNull()) c.output = root["output"].as<std::string>();
  read(root, "parallel", c.parallel);
  c.methods = read_strings(root, "methods");
  c.inject_failure = read_strings(root, "inject_failure");

  if (const auto g = root["generators"]) {
    check_keys(g, {"smote", "adasyn", "gmm", "bn", "tvae", "tabddpm", "ctgan", "copulagan"}, "generators");
    auto& s = c.generators;
    check_keys(g["smote"], {"k"}, "generators.smote");
    if (g["smote"]) read(g["smote"], "k", s.smote_k);
    check_keys(g["adasyn"], {"k"}, "generators.adasyn");
    if (g["adasyn"]) read(g["adasyn"], "k", s.adasyn_k);
    check_keys(g["gmm"], {"max_components"}, "generators.gmm");
    if (g["gmm"]) read(g["gmm"], "max_components", s.gmm_max_components);
    check_keys(g["bn"], {"bins", "alpha"}, "generators.bn");
    if (g["bn"]) {
      read(g["bn"], "bins", s.bn_bins);
      read(g["bn"], "alpha", s.bn_alpha);
    }
    const auto t = g["tvae"];
    check_keys(t, {"epochs", "batch", "latent_dim", "hidden", "learning_rate", "max_steps_per_epoch"}, "generators.tvae");
    if (t) {
      read(t, "epochs", s.tvae.epochs);
      read(t, "batch", s.tvae.batch);
      read(t, "latent_dim", s.tvae.latent_dim);
      read(t, "hidden", s.tvae.hidden);
      read(t, "learning_rate", s.tvae.learning_rate);
      read(t, "max_steps_per_epoch", s.tvae.max_steps_per_epoch);
    }
    const auto df = g["tabddpm"];
    check_keys(df, {"steps", "epochs", "batch", "hidden", "learning_rate", "max_steps_per_epoch"}, "generators.tabddpm");
    if (df) {
      read(df, "steps", s.tabddpm.steps);
      read(df, "epochs", s.tabddpm.epochs);
      read(df, "batch", s.tabddpm.batch);
      read(df, "hidden", s.tabddpm.hidden);
      read(df, "learning_rate", s.tabddpm.learning_rate);
      read(df, "max_steps_per_epoch", s.tabddpm.max_steps_per_epoch);
    }
    read_gan(g["ctgan"], "generators.ctgan", s.ctgan);
    read_gan(g["copulagan"], "generators.copulagan", s.copulagan);
  }
  if (const auto m = root["metrics"]) {
    check_keys(m, {"ks_threshold", "corr_mean_tolerance", "corr_max_tolerance", "max_rows", "kde_curves"}, "metrics");
    read(m, "ks_threshold", c.metrics.ks_threshold);
    read(m, "corr_mean_tolerance", c.metrics.corr_mean_tolerance);
    read(m, "corr_max_tolerance", c.metrics.corr_max_tolerance);
    read(m, "max_rows", c.metrics.max_rows);
    read(m, "kde_curves", c.metrics.kde_curves);
  }
  if (const auto k = root["classifier"]) {
    check_keys(k, {"trees", "max_depth", "max_bins"}, "classifier");
    read(k, "trees", c.classifier.trees);
    read(k, "max_depth", c.classifier.max_depth);
    read(k, "max_bins", c.classifier.max_bins);
  }
  if (const auto p = root["plots"]) {
    check_keys(p, {"svg"}, "plots");
    read(p, "svg", c.svg);
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) { return from_yaml(read_file(path)); }

std::string RunConfig::hash() const { return sha256_hex(emit(*this, false)); }

void RunConfig::validate() const {
  if (methods.empty()) throw ArgumentError("no methods requested");
  std::set<std::string> seen;
  for (const auto& m : methods) {
    method_info(m);
    if (!seen.insert(m).second) throw ArgumentError("method '" + m + "' is listed twice");
  }
  for (const auto& m : inject_failure) method_info(m);
  if (dataset.empty()) throw ArgumentError("no dataset path configured");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ArgumentError("train_fraction must be in (0, 1)");
  if (subsample && *subsample < 4) throw ArgumentError("subsample must be at least 4 rows");
  if (!(metrics.ks_threshold >= 0.0 && metrics.ks_threshold <= 1.0)) throw ArgumentError("ks_threshold must be in [0, 1]");
  if (metrics.corr_mean_tolerance < 0.0 || metrics.corr_max_tolerance < 0.0)
    throw ArgumentError("correlation tolerances must be non-negative");
  if (metrics.max_rows < 2) throw ArgumentError("metrics.max_rows must be at least 2");
  if (generators.smote_k < 1 || generators.adasyn_k < 1) throw ArgumentError("k must be at least 1");
  if (generators.gmm_max_components < 1) throw ArgumentError("gmm.max_components must be at least 1");
  if (generators.bn_bins < 2) throw ArgumentError("bn.bins must be at least 2");
  if (!(generators.bn_alpha > 0.0)) throw ArgumentError("bn.alpha must be positive");
  if (generators.tabddpm.steps < 2) throw ArgumentError("tabddpm.steps must be at least 2");
  for (const auto* g : {&generators.ctgan, &generators.copulagan})
    if (g->batch < 32 || g->pac < 1 || g->batch % g->pac != 0)
      throw ArgumentError("GAN batch must be at least 32 and a multiple of pac");
  if (classifier.trees < 1 || classifier.max_depth < 1 || classifier.max_bins < 2)
    throw ArgumentError("classifier settings must be positive");
}

std::optional<std::size_t> RunConfig::feature_count() const {
  if (selection_count) return selection_count;
  if (profile == Profile::NslKdd) return kNslKddFeatureCount;
  return std::nullopt;
}

}  // namespace synthbench
