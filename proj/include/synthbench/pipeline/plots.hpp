#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "synthbench/metrics/distribution.hpp"

namespace synthbench {

/// Line chart of the real and synthetic densities.
std::string kde_svg(const KdePair& pair, const std::string& title, const std::string& stamp);

/// Grid heatmap of a matrix with values in [0, 1].
std::string heatmap_svg(const Eigen::MatrixXd& m, const std::vector<std::string>& names, const std::string& title,
                        const std::string& stamp);

/// Renders an SVG beside every KDE-pair and correlation CSV of a run.
/// Returns the number of files written; throws DataError when a method
/// directory has no metric artifacts.
std::size_t render_plots(const std::filesystem::path& run_dir);

}  // namespace synthbench
