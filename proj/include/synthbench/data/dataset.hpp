#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace synthbench {

using Index = Eigen::Index;

enum class ColumnKind { Numeric, Binary, Categorical };

std::string_view to_string(ColumnKind kind);
ColumnKind parse_column_kind(std::string_view text);

/// Per-column type and domain. Bounds are meaningful for Numeric and Binary
/// columns; categories only for Categorical ones, where the stored value is
/// the category index in first-appearance order.
struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::Numeric;
  double observed_min = 0.0;
  double observed_max = 0.0;
  std::vector<std::string> categories;

  bool operator==(const ColumnSchema&) const = default;
};

/// Rows and columns removed by cleaning, carried forward on derived tables.
struct DropCounts {
  Index rows = 0;
  std::vector<std::string> columns;
};

/// Columnar table of doubles (rows x columns, column-major) with a schema
/// and an optional designated target column. Immutable once built: every
/// transformation returns a new Dataset.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<ColumnSchema> schema, Eigen::MatrixXd values,
          std::optional<Index> target = std::nullopt);

  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }

  const std::vector<ColumnSchema>& schema() const { return schema_; }
  const ColumnSchema& column(Index j) const { return schema_.at(static_cast<std::size_t>(j)); }
  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::MatrixXd::ConstColXpr col(Index j) const { return values_.col(j); }

  bool has_target() const { return target_.has_value(); }
  /// Throws DataError when no target is designated.
  Index target() const;
  std::optional<Index> target_index() const { return target_; }
  Eigen::VectorXd target_values() const { return values_.col(target()); }

  /// Position of the named column, or nullopt.
  std::optional<Index> find(std::string_view name) const;
  /// Position of the named column; throws DataError when absent.
  Index index_of(std::string_view name) const;
  std::vector<std::string> names() const;

  /// All non-target column positions in table order.
  std::vector<Index> feature_indices() const;
  /// rows x features matrix of the non-target columns.
  Eigen::MatrixXd feature_matrix() const;

  /// {count of target==0, count of target==1}.
  std::array<Index, 2> class_counts() const;

  const DropCounts& drops() const { return drops_; }

  Dataset select_rows(std::span<const Index> rows) const;
  Dataset select_columns(std::span<const Index> cols) const;
  /// Same schema and target, new values (row count may differ).
  Dataset with_values(Eigen::MatrixXd values) const;
  Dataset with_drops(DropCounts drops) const;

  /// Stacks tables with identical schema vertically.
  static Dataset concat_rows(std::span<const Dataset> parts);

 private:
  std::vector<ColumnSchema> schema_;
  Eigen::MatrixXd values_;
  std::optional<Index> target_;
  DropCounts drops_;
};

/// Binary when every finite value is 0 or 1 (and there is at least one),
/// otherwise Numeric. Bounds span the finite values.
ColumnSchema infer_numeric_schema(std::string name, const Eigen::Ref<const Eigen::VectorXd>& column);

/// Recomputes observed bounds of every Numeric/Binary column from values.
Dataset refresh_bounds(const Dataset& d);

}  // namespace synthbench
