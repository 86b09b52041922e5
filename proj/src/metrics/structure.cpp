#include "synthbench/metrics/structure.hpp"

#include <cmath>

#include "synthbench/util/error.hpp"

namespace synthbench {

StructureCheck data_structure_check(const std::vector<ColumnSchema>& real_schema, const Dataset& synth) {
  if (static_cast<Index>(real_schema.size()) != synth.cols())
    throw DataError("schema has " + std::to_string(real_schema.size()) + " columns but the synthetic table has " +
                    std::to_string(synth.cols()));
  StructureCheck out;
  for (Index j = 0; j < synth.cols(); ++j) {
    const auto& col = real_schema[static_cast<std::size_t>(j)];
    if (col.name != synth.column(j).name)
      throw DataError("column " + std::to_string(j) + " is '" + synth.column(j).name + "' but the real schema has '" +
                      col.name + "'");
    const auto x = synth.col(j);
    Index bad = 0;
    std::string problem;
    switch (col.kind) {
      case ColumnKind::Binary:
        bad = (x.array() != 0.0 && x.array() != 1.0).count();
        problem = "values outside {0, 1}";
        break;
      case ColumnKind::Numeric: {
        const double lo = col.observed_min;
        const double hi = col.observed_max;
        for (Index i = 0; i < x.size(); ++i)
          if (!std::isfinite(x[i]) || x[i] < lo || x[i] > hi) ++bad;
        problem = "values outside the real range";
        break;
      }
      case ColumnKind::Categorical: {
        const auto levels = static_cast<double>(col.categories.size());
        for (Index i = 0; i < x.size(); ++i)
          if (!(x[i] >= 0.0 && x[i] < levels && x[i] == std::floor(x[i]))) ++bad;
        problem = "invalid category codes";
        break;
      }
    }
    if (bad > 0) out.findings.push_back({col.name, problem, bad});
  }
  out.valid = out.findings.empty();
  return out;
}

}  // namespace synthbench
