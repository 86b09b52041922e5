#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synthbench/data/dataset.hpp"
#include "synthbench/gen_ai/loss_trace.hpp"
#include "synthbench/pipeline/config.hpp"

namespace synthbench {

enum class MethodCategory { Statistical, AiBased };

struct MethodInfo {
  std::string name;
  std::string label;  // display name in tables
  MethodCategory category;
};

/// The ten generators, statistical first, in table order.
const std::vector<MethodInfo>& method_registry();
const MethodInfo& method_info(std::string_view name);
/// Registry position; also the sub-seed index of the method.
std::size_t method_position(std::string_view name);

struct Generated {
  Dataset data;
  std::optional<LossTrace> trace;
};

/// Runs one generator on `train` with its per-method seed.
Generated generate(std::string_view method, const Dataset& train, const GeneratorSettings& settings,
                   std::uint64_t seed);

}  // namespace synthbench
