#pragma once

#include <filesystem>

#include <json.hpp>

#include "synthbench/nn/mlp.hpp"

namespace synthbench::nn {

/// Writes `<stem>.bin` (parameters as little-endian float64, layer by layer,
/// weights column-major then bias) and `<stem>.json` (shape manifest plus
/// `extra`). Both files are replaced atomically.
void save_checkpoint(const std::filesystem::path& stem, const Mlp& net, const nlohmann::json& extra = nullptr);

/// Rebuilds the network from a checkpoint pair; throws DataError when the
/// binary size disagrees with the manifest.
Mlp load_checkpoint(const std::filesystem::path& stem);

}  // namespace synthbench::nn
