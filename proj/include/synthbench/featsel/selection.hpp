#pragma once

#include <optional>
#include <string>
#include <vector>

#include "synthbench/data/dataset.hpp"

namespace synthbench {

struct MiEntry {
  std::string feature;
  double score = 0.0;
};

/// Every non-target column with its mutual information against the target,
/// highest first; equal scores ordered by feature name.
struct MiRanking {
  std::vector<MiEntry> entries;

  /// "feature,score" CSV with header.
  std::string to_csv() const;
  static MiRanking from_csv(std::string_view text);
};

struct RankOptions {
  /// Bin count for numeric columns; default min(64, ceil(sqrt(rows))).
  std::optional<int> bins;
};

MiRanking rank_features(const Dataset& d, const RankOptions& options = {});

/// ceil(feature_count / 4).
std::size_t quartile_count(std::size_t feature_count);

struct Selection {
  Dataset reduced;
  MiRanking ranking;
};

/// Keeps the `count` best-ranked features (default: the top quartile) in
/// rank order, followed by the target. Needs at least 4 features.
Selection select_top_quartile(const Dataset& d, std::optional<std::size_t> count = std::nullopt,
                              const RankOptions& options = {});

/// Restricts `d` to the named columns, in the given order.
Dataset select_named(const Dataset& d, const std::vector<std::string>& names);

}  // namespace synthbench
