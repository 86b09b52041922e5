#pragma once

#include <string>
#include <vector>

namespace synthbench {

/// Per-epoch training diagnostics, one row per epoch.
struct LossTrace {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row) { rows.push_back(std::move(row)); }
  /// CSV with an "epoch" column followed by `columns`.
  std::string to_csv() const;
};

}  // namespace synthbench
