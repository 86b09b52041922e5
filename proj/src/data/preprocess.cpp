#include "synthbench/data/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "synthbench/util/error.hpp"
#include "synthbench/util/log.hpp"

namespace synthbench {

Dataset clean(const Dataset& d) {
  const auto& v = d.values();
  std::vector<Index> keep_rows;
  keep_rows.reserve(static_cast<std::size_t>(d.rows()));
  for (Index i = 0; i < d.rows(); ++i) {
    if (v.row(i).allFinite()) keep_rows.push_back(i);
  }
  DropCounts drops = d.drops();
  drops.rows += d.rows() - static_cast<Index>(keep_rows.size());
  Dataset rows = static_cast<Index>(keep_rows.size()) == d.rows() ? d : d.select_rows(keep_rows);

  std::vector<Index> keep_cols;
  for (Index j = 0; j < rows.cols(); ++j) {
    const auto& cj = rows.column(j);
    const bool duplicate = std::any_of(keep_cols.begin(), keep_cols.end(), [&](Index k) {
      const auto& ck = rows.column(k);
      return ck.name == cj.name && ck.kind == cj.kind && ck.categories == cj.categories &&
             rows.col(k) == rows.col(j);
    });
    if (duplicate && rows.target_index() != j) {
      drops.columns.push_back(cj.name);
    } else {
      keep_cols.push_back(j);
    }
  }
  Dataset out = static_cast<Index>(keep_cols.size()) == rows.cols() ? rows : rows.select_columns(keep_cols);

  auto schema = out.schema();
  std::map<std::string, int> seen;
  bool renamed = false;
  for (auto& c : schema) {
    const int n = seen[c.name]++;
    if (n > 0) {
      c.name += "." + std::to_string(n);
      renamed = true;
    }
  }
  if (renamed) out = Dataset(std::move(schema), out.values(), out.target_index());
  return refresh_bounds(out).with_drops(std::move(drops));
}

Dataset encode_categoricals(const Dataset& d) {
  std::vector<ColumnSchema> schema;
  std::vector<Eigen::VectorXd> cols;
  std::optional<Index> target;
  for (Index j = 0; j < d.cols(); ++j) {
    const auto& c = d.column(j);
    if (c.kind != ColumnKind::Categorical || d.target_index() == j) {
      if (d.target_index() == j) target = static_cast<Index>(schema.size());
      schema.push_back(c);
      cols.emplace_back(d.col(j));
      continue;
    }
    if (c.categories.size() == 1)
      log_warn("column '" + c.name + "' has a single category; its indicator is constant");
    for (std::size_t k = 0; k < c.categories.size(); ++k) {
      Eigen::VectorXd ind = (d.col(j).array() == static_cast<double>(k)).cast<double>();
      schema.push_back(infer_numeric_schema(c.name + "_" + c.categories[k], ind));
      schema.back().kind = ColumnKind::Binary;
      cols.push_back(std::move(ind));
    }
  }
  Eigen::MatrixXd m(d.rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) m.col(static_cast<Index>(k)) = cols[k];
  return Dataset(std::move(schema), std::move(m), target).with_drops(d.drops());
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

const std::set<std::string>& nsl_attacks() {
  static const std::set<std::string> names = {
      "back", "buffer_overflow", "ftp_write", "guess_passwd", "imap", "ipsweep", "land",
      "loadmodule", "multihop", "neptune", "nmap", "perl", "phf", "pod", "portsweep", "rootkit",
      "satan", "smurf", "spy", "teardrop", "warezclient", "warezmaster", "apache2", "mailbomb",
      "processtable", "udpstorm", "mscan", "saint", "httptunnel", "ps", "sqlattack", "xterm",
      "named", "sendmail", "snmpgetattack", "snmpguess", "worm", "xlock", "xsnoop"};
  return names;
}

const std::set<std::string>& cic_attacks() {
  static const std::set<std::string> names = {
      "DoS Hulk", "PortScan", "DDoS", "DoS GoldenEye", "FTP-Patator", "SSH-Patator",
      "DoS slowloris", "DoS Slowhttptest", "Bot", "Infiltration", "Heartbleed"};
  return names;
}

int label_value(const std::string& raw, Profile profile) {
  switch (profile) {
    case Profile::NslKdd:
      if (raw == "normal") return 0;
      if (nsl_attacks().count(raw)) return 1;
      break;
    case Profile::CicIds2017:
      if (raw == "BENIGN") return 0;
      if (cic_attacks().count(raw) || raw.rfind("Web Attack", 0) == 0) return 1;
      break;
    case Profile::Generic: {
      const auto l = lower(raw);
      if (l == "0" || l == "normal" || l == "benign") return 0;
      if (l == "1" || l == "attack" || l == "malicious" || l == "anomaly") return 1;
      break;
    }
  }
  throw DataError("unknown label '" + raw + "' for profile " + std::string(to_string(profile)));
}

}  // namespace

Dataset binarize_target(const Dataset& d, Profile profile) {
  const Index t = d.target();
  const auto& c = d.column(t);
  Eigen::VectorXd y(d.rows());
  if (c.kind == ColumnKind::Categorical) {
    std::vector<int> map(c.categories.size());
    for (std::size_t k = 0; k < c.categories.size(); ++k) map[k] = label_value(c.categories[k], profile);
    for (Index i = 0; i < d.rows(); ++i) {
      const double v = d.col(t)[i];
      y[i] = std::isfinite(v) ? map[static_cast<std::size_t>(v)] : v;
    }
  } else {
    for (Index i = 0; i < d.rows(); ++i) {
      const double v = d.col(t)[i];
      if (std::isfinite(v) && v != 0.0 && v != 1.0)
        throw DataError("unknown label '" + std::to_string(v) + "' at row " + std::to_string(i));
      y[i] = v;
    }
  }
  auto schema = d.schema();
  auto& ts = schema[static_cast<std::size_t>(t)];
  ts = infer_numeric_schema("target", y);
  ts.kind = ColumnKind::Binary;
  Eigen::MatrixXd m = d.values();
  m.col(t) = y;
  return Dataset(std::move(schema), std::move(m), t).with_drops(d.drops());
}

Dataset prepare(const std::filesystem::path& path, Profile profile, const LoadOptions& options) {
  return encode_categoricals(binarize_target(clean(load_csv(path, profile, options)), profile));
}

}  // namespace synthbench
