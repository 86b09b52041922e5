#pragma once

#include <string>
#include <vector>

#include "synthbench/data/dataset.hpp"

namespace synthbench {

struct StructureFinding {
  std::string column;
  std::string problem;
  Index offending_rows = 0;
};

struct StructureCheck {
  bool valid = true;
  std::vector<StructureFinding> findings;
};

/// Binary columns must hold only 0/1, numeric columns must stay inside the
/// real [observed_min, observed_max], categorical columns must hold valid
/// category codes. Columns are aligned by name and order.
StructureCheck data_structure_check(const std::vector<ColumnSchema>& real_schema, const Dataset& synth);

}  // namespace synthbench
