#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "synthbench/data/dataset.hpp"

namespace synthbench {

/// Source dataset family; decides column typing and label vocabulary.
enum class Profile { NslKdd, CicIds2017, Generic };

std::string_view to_string(Profile profile);
Profile parse_profile(std::string_view text);

/// Canonical 43 column names of the headerless KDD format
/// (41 features, the attack label, and the difficulty level).
const std::vector<std::string>& nsl_kdd_column_names();

struct LoadOptions {
  /// Generic profile only: label column name. Defaults to a column named
  /// label/target/class (case-insensitive), else the last column.
  std::optional<std::string> target_column;
};

/// Reads a raw dataset. `path` may be a directory for CicIds2017, in which
/// case every *.csv inside is read in weekday order and concatenated.
/// Categorical cells become category indices; empty/NaN/inf cells are kept
/// as non-finite values for clean() to drop.
Dataset load_csv(const std::filesystem::path& path, Profile profile, const LoadOptions& options = {});

/// Splits RFC-4180 text into records. The callback receives the 0-based
/// record number and its fields (quotes removed, "" unescaped).
void for_each_csv_record(std::string_view text,
                         const std::function<void(std::size_t, const std::vector<std::string>&)>& fn);

/// Schema sidecar path for a dataset CSV: foo.csv -> foo.schema.json.
std::filesystem::path schema_path_for(const std::filesystem::path& csv_path);

nlohmann::json schema_to_json(const Dataset& d);

/// Canonical CSV text (header + rows). Categorical cells are written as
/// their category text; numbers in shortest round-trip form.
std::string dataset_to_csv(const Dataset& d);

/// Writes the CSV and its JSON schema sidecar atomically. `provenance` is
/// embedded in the sidecar under "provenance" when not null.
void write_dataset(const Dataset& d, const std::filesystem::path& csv_path,
                   const nlohmann::json& provenance = nullptr);

/// Reads a dataset written by write_dataset, restoring kinds, bounds,
/// categories and the target column from the sidecar.
Dataset read_dataset(const std::filesystem::path& csv_path);

}  // namespace synthbench
