#include "synthbench/pipeline/registry.hpp"

#include <algorithm>

#include "synthbench/gen_ai/bayes_net.hpp"
#include "synthbench/gen_ai/ctgan.hpp"
#include "synthbench/gen_ai/diffusion.hpp"
#include "synthbench/gen_ai/tvae.hpp"
#include "synthbench/gen_stat/resample.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/random.hpp"

namespace synthbench {

namespace {

GanOptions gan_options(const GanSettings& s, std::uint64_t seed) {
  GanOptions o;
  o.epochs = s.epochs;
  o.batch = s.batch;
  o.noise_dim = s.noise_dim;
  o.hidden = s.hidden;
  o.pac = s.pac;
  o.tau = s.tau;
  o.adam.lr = s.learning_rate;
  o.max_steps_per_epoch = s.max_steps_per_epoch;
  o.seed = seed;
  return o;
}

}  // namespace

const std::vector<MethodInfo>& method_registry() {
  static const std::vector<MethodInfo> registry{
      {"ros", "ROS", MethodCategory::Statistical},
      {"smote", "SMOTE", MethodCategory::Statistical},
      {"adasyn", "ADASYN", MethodCategory::Statistical},
      {"cc", "Cluster Centroids", MethodCategory::Statistical},
      {"gmm", "GMM", MethodCategory::Statistical},
      {"bn", "Bayesian Network", MethodCategory::AiBased},
      {"tvae", "TVAE", MethodCategory::AiBased},
      {"tabddpm", "TabDDPM", MethodCategory::AiBased},
      {"ctgan", "CTGAN", MethodCategory::AiBased},
      {"copulagan", "CopulaGAN", MethodCategory::AiBased},
  };
  return registry;
}

std::size_t method_position(std::string_view name) {
  const auto& r = method_registry();
  const auto it = std::find_if(r.begin(), r.end(), [&](const MethodInfo& m) { return m.name == name; });
  if (it == r.end()) {
    std::string known;
    for (const auto& m : r) known += (known.empty() ? "" : ", ") + m.name;
    throw ArgumentError("unknown method '" + std::string(name) + "' (known: " + known + ")");
  }
  return static_cast<std::size_t>(it - r.begin());
}

const MethodInfo& method_info(std::string_view name) { return method_registry()[method_position(name)]; }

Generated generate(std::string_view method, const Dataset& train, const GeneratorSettings& settings,
                   std::uint64_t seed) {
  const auto s = Rng::derive(seed, method_position(method));
  if (method == "ros") return {ros_balance(train, s), std::nullopt};
  if (method == "smote") return {smote_balance(train, settings.smote_k, s), std::nullopt};
  if (method == "adasyn") return {adasyn_balance(train, settings.adasyn_k, s), std::nullopt};
  if (method == "cc") return {cluster_centroid_balance(train, s), std::nullopt};
  if (method == "gmm") return {gmm_fit_sample(train, settings.gmm_max_components, s), std::nullopt};
  if (method == "bn") return {bn_fit_sample(train, settings.bn_bins, settings.bn_alpha, s), std::nullopt};
  if (method == "tvae") {
    VaeOptions o;
    o.epochs = settings.tvae.epochs;
    o.batch = settings.tvae.batch;
    o.latent_dim = settings.tvae.latent_dim;
    o.hidden = settings.tvae.hidden;
    o.adam.lr = settings.tvae.learning_rate;
    o.max_steps_per_epoch = settings.tvae.max_steps_per_epoch;
    o.seed = s;
    auto r = tvae_fit_sample(train, o);
    return {std::move(r.data), std::move(r.trace)};
  }
  if (method == "tabddpm") {
    DiffusionOptions o;
    o.steps = settings.tabddpm.steps;
    o.epochs = settings.tabddpm.epochs;
    o.batch = settings.tabddpm.batch;
    o.hidden = settings.tabddpm.hidden;
    o.adam.lr = settings.tabddpm.learning_rate;
    o.max_steps_per_epoch = settings.tabddpm.max_steps_per_epoch;
    o.seed = s;
    auto r = diffusion_fit_sample(train, o);
    return {std::move(r.data), std::move(r.trace)};
  }
  if (method == "ctgan") {
    auto r = ctgan_fit_sample(train, gan_options(settings.ctgan, s));
    return {std::move(r.data), std::move(r.trace)};
  }
  auto r = copulagan_fit_sample(train, gan_options(settings.copulagan, s));
  return {std::move(r.data), std::move(r.trace)};
}

}  // namespace synthbench
