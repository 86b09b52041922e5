#include "synthbench/featsel/selection.hpp"

#include <algorithm>

#include "synthbench/data/csv_io.hpp"
#include "synthbench/featsel/information.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/io.hpp"

namespace synthbench {

std::string MiRanking::to_csv() const {
  std::string out = "feature,score\n";
  for (const auto& e : entries) {
    const bool quote = e.feature.find_first_of(",\"") != std::string::npos;
    if (quote) {
      out += '"';
      for (char c : e.feature) out += c == '"' ? std::string("\"\"") : std::string(1, c);
      out += '"';
    } else {
      out += e.feature;
    }
    out += "," + format_number(e.score) + "\n";
  }
  return out;
}

MiRanking MiRanking::from_csv(std::string_view text) {
  MiRanking r;
  for_each_csv_record(text, [&](std::size_t rec, const std::vector<std::string>& f) {
    if (rec == 0) return;
    if (f.size() != 2) throw DataError("ranking row " + std::to_string(rec) + " needs 2 fields");
    double v = 0.0;
    if (!parse_number(f[1], v)) throw DataError("ranking row " + std::to_string(rec) + ": bad score");
    r.entries.push_back({f[0], v});
  });
  return r;
}

MiRanking rank_features(const Dataset& d, const RankOptions& options) {
  const int bins = options.bins.value_or(default_bins(d.rows()));
  if (d.rows() == 0) throw DataError("cannot rank features of an empty dataset");
  const auto target = discretize(d.col(d.target()), bins, true);
  MiRanking r;
  for (const Index j : d.feature_indices()) {
    const bool exact = d.column(j).kind != ColumnKind::Numeric;
    const auto x = discretize(d.col(j), bins, exact);
    r.entries.push_back({d.column(j).name, mutual_information(x, target).mi});
  }
  std::sort(r.entries.begin(), r.entries.end(), [](const MiEntry& a, const MiEntry& b) {
    return a.score != b.score ? a.score > b.score : a.feature < b.feature;
  });
  return r;
}

std::size_t quartile_count(std::size_t feature_count) { return (feature_count + 3) / 4; }

Dataset select_named(const Dataset& d, const std::vector<std::string>& names) {
  std::vector<Index> cols;
  cols.reserve(names.size());
  for (const auto& n : names) cols.push_back(d.index_of(n));
  return d.select_columns(cols);
}

Selection select_top_quartile(const Dataset& d, std::optional<std::size_t> count, const RankOptions& options) {
  const auto features = d.feature_indices().size();
  if (features < 4) throw DataError("feature selection needs at least 4 features, found " + std::to_string(features));
  const auto keep = count.value_or(quartile_count(features));
  if (keep < 1 || keep > features)
    throw ArgumentError("cannot keep " + std::to_string(keep) + " of " + std::to_string(features) + " features");
  auto ranking = rank_features(d, options);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < keep; ++k) names.push_back(ranking.entries[k].feature);
  names.push_back(d.column(d.target()).name);
  return {select_named(d, names), std::move(ranking)};
}

}  // namespace synthbench
