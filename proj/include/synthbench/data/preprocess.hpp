#pragma once

#include "synthbench/data/csv_io.hpp"
#include "synthbench/data/dataset.hpp"

namespace synthbench {

/// Drops every row holding a NaN or infinite cell, then removes columns that
/// repeat an earlier column's name and values. Surviving repeated names get
/// ".1", ".2", ... suffixes. Drop counts accumulate on the result.
Dataset clean(const Dataset& d);

/// Replaces each non-target Categorical column, in place, by one Binary
/// indicator per category named `<col>_<category>`.
Dataset encode_categoricals(const Dataset& d);

/// Maps the label column to a Binary column named "target"
/// (0 = normal/benign, 1 = attack). Throws DataError on an unknown label.
Dataset binarize_target(const Dataset& d, Profile profile);

/// load_csv -> clean -> binarize_target -> encode_categoricals.
Dataset prepare(const std::filesystem::path& path, Profile profile, const LoadOptions& options = {});

}  // namespace synthbench
