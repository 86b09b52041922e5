#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace synthbench {

/// Writes to a sibling temp file and renames it into place, so readers
/// never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `v`; NaN is empty.
std::string format_number(double v);

/// Parses a decimal cell. Empty or "NaN" gives NaN; "inf"/"Infinity" give
/// infinities. Returns false when the text is not a number.
bool parse_number(std::string_view text, double& out);

/// Appends `s` as one CSV field, quoted when it contains a separator,
/// quote or line break.
void append_csv_field(std::string& out, std::string_view s);

}  // namespace synthbench
