#include "synthbench/data/dataset.hpp"

#include <cmath>
#include <limits>

#include "synthbench/util/error.hpp"

namespace synthbench {

std::string_view to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::Numeric: return "numeric";
    case ColumnKind::Binary: return "binary";
    case ColumnKind::Categorical: return "categorical";
  }
  return "numeric";
}

ColumnKind parse_column_kind(std::string_view text) {
  if (text == "numeric") return ColumnKind::Numeric;
  if (text == "binary") return ColumnKind::Binary;
  if (text == "categorical") return ColumnKind::Categorical;
  throw DataError("unknown column kind '" + std::string(text) + "'");
}

Dataset::Dataset(std::vector<ColumnSchema> schema, Eigen::MatrixXd values,
                 std::optional<Index> target)
    : schema_(std::move(schema)), values_(std::move(values)), target_(target) {
  if (static_cast<Index>(schema_.size()) != values_.cols())
    throw DataError("schema has " + std::to_string(schema_.size()) + " columns but values have " +
                    std::to_string(values_.cols()));
  if (target_ && (*target_ < 0 || *target_ >= values_.cols()))
    throw DataError("target index out of range");
}

Index Dataset::target() const {
  if (!target_) throw DataError("dataset has no target column");
  return *target_;
}

std::optional<Index> Dataset::find(std::string_view name) const {
  for (std::size_t j = 0; j < schema_.size(); ++j) {
    if (schema_[j].name == name) return static_cast<Index>(j);
  }
  return std::nullopt;
}

Index Dataset::index_of(std::string_view name) const {
  if (auto j = find(name)) return *j;
  throw DataError("no column named '" + std::string(name) + "'");
}

std::vector<std::string> Dataset::names() const {
  std::vector<std::string> out;
  out.reserve(schema_.size());
  for (const auto& c : schema_) out.push_back(c.name);
  return out;
}

std::vector<Index> Dataset::feature_indices() const {
  std::vector<Index> out;
  for (Index j = 0; j < cols(); ++j) {
    if (!target_ || j != *target_) out.push_back(j);
  }
  return out;
}

Eigen::MatrixXd Dataset::feature_matrix() const {
  const auto idx = feature_indices();
  Eigen::MatrixXd out(rows(), static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Index>(k)) = values_.col(idx[k]);
  return out;
}

std::array<Index, 2> Dataset::class_counts() const {
  const auto y = values_.col(target());
  std::array<Index, 2> counts{0, 0};
  for (Index i = 0; i < y.size(); ++i) {
    if (y[i] == 0.0) {
      ++counts[0];
    } else if (y[i] == 1.0) {
      ++counts[1];
    } else {
      throw DataError("target value " + std::to_string(y[i]) + " at row " + std::to_string(i) +
                      " is not binary");
    }
  }
  return counts;
}

Dataset Dataset::select_rows(std::span<const Index> rows) const {
  Eigen::MatrixXd out(static_cast<Index>(rows.size()), cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = values_.row(rows[i]);
  Dataset d(schema_, std::move(out), target_);
  d.drops_ = drops_;
  return d;
}

Dataset Dataset::select_columns(std::span<const Index> cols) const {
  std::vector<ColumnSchema> schema;
  Eigen::MatrixXd out(rows(), static_cast<Index>(cols.size()));
  std::optional<Index> target;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    schema.push_back(schema_.at(static_cast<std::size_t>(cols[k])));
    out.col(static_cast<Index>(k)) = values_.col(cols[k]);
    if (target_ && cols[k] == *target_) target = static_cast<Index>(k);
  }
  Dataset d(std::move(schema), std::move(out), target);
  d.drops_ = drops_;
  return d;
}

Dataset Dataset::with_values(Eigen::MatrixXd values) const {
  Dataset d(schema_, std::move(values), target_);
  d.drops_ = drops_;
  return d;
}

Dataset Dataset::with_drops(DropCounts drops) const {
  Dataset d = *this;
  d.drops_ = std::move(drops);
  return d;
}

Dataset Dataset::concat_rows(std::span<const Dataset> parts) {
  if (parts.empty()) throw DataError("concat_rows: no parts");
  Index total = 0;
  for (const auto& p : parts) {
    if (p.schema_.size() != parts[0].schema_.size() || p.target_ != parts[0].target_)
      throw DataError("concat_rows: schema mismatch");
    for (std::size_t j = 0; j < p.schema_.size(); ++j) {
      if (p.schema_[j].name != parts[0].schema_[j].name || p.schema_[j].kind != parts[0].schema_[j].kind)
        throw DataError("concat_rows: column '" + p.schema_[j].name + "' differs between parts");
    }
    total += p.rows();
  }
  Eigen::MatrixXd out(total, parts[0].cols());
  Index offset = 0;
  for (const auto& p : parts) {
    out.middleRows(offset, p.rows()) = p.values_;
    offset += p.rows();
  }
  Dataset d(parts[0].schema_, std::move(out), parts[0].target_);
  d.drops_ = parts[0].drops_;
  return d;
}

ColumnSchema infer_numeric_schema(std::string name, const Eigen::Ref<const Eigen::VectorXd>& column) {
  ColumnSchema s;
  s.name = std::move(name);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  bool binary = true;
  Index finite = 0;
  for (Index i = 0; i < column.size(); ++i) {
    const double v = column[i];
    if (!std::isfinite(v)) continue;
    ++finite;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (v != 0.0 && v != 1.0) binary = false;
  }
  if (finite == 0) {
    s.kind = ColumnKind::Numeric;
    return s;
  }
  s.kind = binary ? ColumnKind::Binary : ColumnKind::Numeric;
  s.observed_min = lo;
  s.observed_max = hi;
  return s;
}

Dataset refresh_bounds(const Dataset& d) {
  auto schema = d.schema();
  for (Index j = 0; j < d.cols(); ++j) {
    auto& c = schema[static_cast<std::size_t>(j)];
    if (c.kind == ColumnKind::Categorical) continue;
    const auto fresh = infer_numeric_schema(c.name, d.col(j));
    c.observed_min = fresh.observed_min;
    c.observed_max = fresh.observed_max;
  }
  Dataset out(std::move(schema), d.values(), d.target_index());
  return out.with_drops(d.drops());
}

}  // namespace synthbench
