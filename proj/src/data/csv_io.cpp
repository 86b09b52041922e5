#include "synthbench/data/csv_io.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "synthbench/util/error.hpp"
#include "synthbench/util/io.hpp"

namespace synthbench {
namespace fs = std::filesystem;

std::string_view to_string(Profile profile) {
  switch (profile) {
    case Profile::NslKdd: return "nsl-kdd";
    case Profile::CicIds2017: return "cic-ids2017";
    case Profile::Generic: return "generic";
  }
  return "generic";
}

Profile parse_profile(std::string_view text) {
  if (text == "nsl-kdd" || text == "nslkdd") return Profile::NslKdd;
  if (text == "cic-ids2017" || text == "cicids2017") return Profile::CicIds2017;
  if (text == "generic") return Profile::Generic;
  throw ArgumentError("unknown dataset profile '" + std::string(text) + "'");
}

const std::vector<std::string>& nsl_kdd_column_names() {
  static const std::vector<std::string> names = {
      "duration", "protocol_type", "service", "flag", "src_bytes", "dst_bytes", "land",
      "wrong_fragment", "urgent", "hot", "num_failed_logins", "logged_in", "num_compromised",
      "root_shell", "su_attempted", "num_root", "num_file_creations", "num_shells",
      "num_access_files", "num_outbound_cmds", "is_host_login", "is_guest_login", "count",
      "srv_count", "serror_rate", "srv_serror_rate", "rerror_rate", "srv_rerror_rate",
      "same_srv_rate", "diff_srv_rate", "srv_diff_host_rate", "dst_host_count",
      "dst_host_srv_count", "dst_host_same_srv_rate", "dst_host_diff_srv_rate",
      "dst_host_same_src_port_rate", "dst_host_srv_diff_host_rate", "dst_host_serror_rate",
      "dst_host_srv_serror_rate", "dst_host_rerror_rate", "dst_host_srv_rerror_rate", "label",
      "level"};
  return names;
}

void for_each_csv_record(std::string_view text,
                         const std::function<void(std::size_t, const std::vector<std::string>&)>& fn) {
  if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
      static_cast<unsigned char>(text[1]) == 0xBB && static_cast<unsigned char>(text[2]) == 0xBF) {
    text.remove_prefix(3);
  }
  std::vector<std::string> fields;
  std::string field;
  std::size_t record = 0;
  std::size_t i = 0;
  const std::size_t n = text.size();
  bool in_quotes = false;
  bool any = false;
  auto finish_record = [&] {
    fields.push_back(std::move(field));
    field.clear();
    const bool blank = fields.size() == 1 && fields[0].empty();
    if (!blank) fn(record++, fields);
    fields.clear();
    any = false;
  };
  while (i < n) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < n && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
      } else {
        field.push_back(c);
      }
      ++i;
      continue;
    }
    any = true;
    if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      finish_record();
      if (c == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
    } else {
      field.push_back(c);
    }
    ++i;
  }
  if (in_quotes) throw DataError("unterminated quoted field at end of CSV");
  if (any || !field.empty() || !fields.empty()) finish_record();
}

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return std::string(s);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

/// Accumulates one column while streaming records.
struct ColumnBuilder {
  std::string name;
  bool categorical = false;
  std::vector<double> values;
  std::vector<std::string> categories;
  std::unordered_map<std::string, double> lookup;

  void push(const std::string& cell, std::size_t line, const std::string& source) {
    if (categorical) {
      std::string key = trim(cell);
      if (key.empty()) {
        values.push_back(std::nan(""));
        return;
      }
      auto [it, inserted] = lookup.try_emplace(key, static_cast<double>(categories.size()));
      if (inserted) categories.push_back(key);
      values.push_back(it->second);
      return;
    }
    double v = 0.0;
    if (!parse_number(cell, v))
      throw DataError(source + ": unparseable numeric cell '" + cell + "' at row " + std::to_string(line) +
                      ", column '" + name + "'");
    values.push_back(v);
  }

  ColumnSchema schema() const {
    if (categorical) {
      ColumnSchema s;
      s.name = name;
      s.kind = ColumnKind::Categorical;
      s.categories = categories;
      return s;
    }
    return infer_numeric_schema(name, Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Index>(values.size())));
  }
};

Dataset assemble(std::vector<ColumnBuilder>& builders, std::optional<Index> target) {
  const Index rows = builders.empty() ? 0 : static_cast<Index>(builders[0].values.size());
  Eigen::MatrixXd m(rows, static_cast<Index>(builders.size()));
  std::vector<ColumnSchema> schema;
  for (std::size_t j = 0; j < builders.size(); ++j) {
    m.col(static_cast<Index>(j)) = Eigen::Map<const Eigen::VectorXd>(builders[j].values.data(), rows);
    schema.push_back(builders[j].schema());
  }
  return Dataset(std::move(schema), std::move(m), target);
}

std::vector<fs::path> cic_files(const fs::path& dir) {
  static const std::vector<std::string> order = {
      "Monday-WorkingHours.pcap_ISCX.csv",
      "Tuesday-WorkingHours.pcap_ISCX.csv",
      "Wednesday-workingHours.pcap_ISCX.csv",
      "Thursday-WorkingHours-Morning-WebAttacks.pcap_ISCX.csv",
      "Thursday-WorkingHours-Afternoon-Infilteration.pcap_ISCX.csv",
      "Friday-WorkingHours-Morning.pcap_ISCX.csv",
      "Friday-WorkingHours-Afternoon-PortScan.pcap_ISCX.csv",
      "Friday-WorkingHours-Afternoon-DDos.pcap_ISCX.csv"};
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  }
  auto rank = [&](const fs::path& p) {
    const auto name = p.filename().string();
    const auto it = std::find(order.begin(), order.end(), name);
    return it == order.end() ? order.size() : static_cast<std::size_t>(it - order.begin());
  };
  std::sort(files.begin(), files.end(), [&](const fs::path& a, const fs::path& b) {
    const auto ra = rank(a), rb = rank(b);
    return ra != rb ? ra < rb : a.filename() < b.filename();
  });
  if (files.empty()) throw DataError("no CSV files in " + dir.string());
  return files;
}

Dataset load_nsl_kdd(const fs::path& path) {
  const auto& names = nsl_kdd_column_names();
  std::vector<ColumnBuilder> builders(names.size());
  for (std::size_t j = 0; j < names.size(); ++j) {
    builders[j].name = names[j];
    builders[j].categorical = names[j] == "protocol_type" || names[j] == "service" || names[j] == "flag" ||
                              names[j] == "label";
  }
  const std::string text = read_file(path);
  const std::string source = path.filename().string();
  for_each_csv_record(text, [&](std::size_t rec, const std::vector<std::string>& fields) {
    if (fields.size() != names.size())
      throw DataError(source + ": expected " + std::to_string(names.size()) + " columns for nsl-kdd, found " +
                      std::to_string(fields.size()) + " at row " + std::to_string(rec));
    if (rec == 0) {
      double probe = 0.0;
      if (!parse_number(fields[0], probe) || fields[0].empty()) return;  // header row
    }
    for (std::size_t j = 0; j < fields.size(); ++j) builders[j].push(fields[j], rec, source);
  });
  return assemble(builders, static_cast<Index>(41));
}

Dataset load_cic(const fs::path& path) {
  std::vector<fs::path> files = fs::is_directory(path) ? cic_files(path) : std::vector<fs::path>{path};
  std::vector<ColumnBuilder> builders;
  std::vector<std::string> header;
  std::optional<Index> target;
  for (const auto& file : files) {
    const std::string text = read_file(file);
    const std::string source = file.filename().string();
    for_each_csv_record(text, [&](std::size_t rec, const std::vector<std::string>& fields) {
      if (rec == 0) {
        std::vector<std::string> names;
        for (const auto& f : fields) names.push_back(trim(f));
        if (header.empty()) {
          if (names.size() != 79)
            throw DataError(source + ": expected 79 columns for cic-ids2017, found " + std::to_string(names.size()));
          header = names;
          builders.resize(names.size());
          for (std::size_t j = 0; j < names.size(); ++j) {
            builders[j].name = names[j];
            builders[j].categorical = names[j] == "Label";
            if (builders[j].categorical) target = static_cast<Index>(j);
          }
          if (!target) throw DataError(source + ": no 'Label' column");
        } else if (names != header) {
          throw DataError(source + ": header differs from " + files.front().filename().string());
        }
        return;
      }
      if (fields.size() != header.size())
        throw DataError(source + ": expected " + std::to_string(header.size()) + " fields, found " +
                        std::to_string(fields.size()) + " at row " + std::to_string(rec));
      for (std::size_t j = 0; j < fields.size(); ++j) builders[j].push(fields[j], rec, source);
    });
  }
  if (header.empty()) throw DataError(path.string() + ": empty input, header row required");
  return assemble(builders, target);
}

Dataset load_generic(const fs::path& path, const LoadOptions& options) {
  const std::string text = read_file(path);
  const std::string source = path.filename().string();
  std::vector<std::string> header;
  std::vector<bool> numeric;
  // First pass decides column kinds.
  for_each_csv_record(text, [&](std::size_t rec, const std::vector<std::string>& fields) {
    if (rec == 0) {
      for (const auto& f : fields) header.push_back(trim(f));
      numeric.assign(header.size(), true);
      return;
    }
    if (fields.size() != header.size())
      throw DataError(source + ": expected " + std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()) + " at row " + std::to_string(rec));
    for (std::size_t j = 0; j < fields.size(); ++j) {
      double v = 0.0;
      if (numeric[j] && !parse_number(fields[j], v)) numeric[j] = false;
    }
  });
  if (header.empty()) throw DataError(source + ": header row required");

  std::optional<Index> target;
  if (options.target_column) {
    for (std::size_t j = 0; j < header.size(); ++j)
      if (header[j] == *options.target_column) target = static_cast<Index>(j);
    if (!target) throw DataError(source + ": no column named '" + *options.target_column + "'");
  } else {
    for (std::size_t j = 0; j < header.size() && !target; ++j) {
      const auto l = lower(header[j]);
      if (l == "label" || l == "target" || l == "class") target = static_cast<Index>(j);
    }
    if (!target) target = static_cast<Index>(header.size()) - 1;
  }

  std::vector<ColumnBuilder> builders(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) {
    builders[j].name = header[j];
    builders[j].categorical = !numeric[j];
  }
  for_each_csv_record(text, [&](std::size_t rec, const std::vector<std::string>& fields) {
    if (rec == 0) return;
    for (std::size_t j = 0; j < fields.size(); ++j) builders[j].push(fields[j], rec, source);
  });
  return assemble(builders, target);
}

}  // namespace

Dataset load_csv(const fs::path& path, Profile profile, const LoadOptions& options) {
  if (!fs::exists(path)) throw DataError("missing input: " + path.string());
  switch (profile) {
    case Profile::NslKdd: return load_nsl_kdd(path);
    case Profile::CicIds2017: return load_cic(path);
    case Profile::Generic: return load_generic(path, options);
  }
  throw ArgumentError("unknown profile");
}

fs::path schema_path_for(const fs::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".schema.json");
  return p;
}

nlohmann::json schema_to_json(const Dataset& d) {
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : d.schema()) {
    nlohmann::json jc = {{"name", c.name}, {"kind", std::string(to_string(c.kind))}};
    if (c.kind == ColumnKind::Categorical) {
      jc["categories"] = c.categories;
    } else {
      jc["min"] = c.observed_min;
      jc["max"] = c.observed_max;
    }
    cols.push_back(std::move(jc));
  }
  nlohmann::json j = {{"columns", std::move(cols)}, {"row_count", d.rows()}};
  j["target"] = d.has_target() ? nlohmann::json(d.column(d.target()).name) : nlohmann::json(nullptr);
  j["dropped"] = {{"rows", d.drops().rows}, {"columns", d.drops().columns}};
  return j;
}


std::string dataset_to_csv(const Dataset& d) {
  std::string out;
  out.reserve(static_cast<std::size_t>(d.rows() * d.cols() * 6 + 64));
  for (Index j = 0; j < d.cols(); ++j) {
    if (j) out.push_back(',');
    append_csv_field(out, d.column(j).name);
  }
  out.push_back('\n');
  for (Index i = 0; i < d.rows(); ++i) {
    for (Index j = 0; j < d.cols(); ++j) {
      if (j) out.push_back(',');
      const double v = d.values()(i, j);
      const auto& c = d.column(j);
      if (c.kind == ColumnKind::Categorical && std::isfinite(v)) {
        const auto k = static_cast<std::size_t>(v);
        if (v < 0 || k >= c.categories.size() || static_cast<double>(k) != v)
          throw DataError("category index " + format_number(v) + " out of range in column '" + c.name + "'");
        append_csv_field(out, c.categories[k]);
      } else {
        out += format_number(v);
      }
    }
    out.push_back('\n');
  }
  return out;
}

void write_dataset(const Dataset& d, const fs::path& csv_path, const nlohmann::json& provenance) {
  auto j = schema_to_json(d);
  if (!provenance.is_null()) j["provenance"] = provenance;
  write_file_atomic(csv_path, dataset_to_csv(d));
  write_file_atomic(schema_path_for(csv_path), j.dump(2) + "\n");
}

Dataset read_dataset(const fs::path& csv_path) {
  const auto sidecar = schema_path_for(csv_path);
  if (!fs::exists(sidecar)) throw DataError("missing schema sidecar " + sidecar.string());
  const auto j = nlohmann::json::parse(read_file(sidecar));
  std::vector<ColumnSchema> schema;
  for (const auto& jc : j.at("columns")) {
    ColumnSchema c;
    c.name = jc.at("name").get<std::string>();
    c.kind = parse_column_kind(jc.at("kind").get<std::string>());
    if (c.kind == ColumnKind::Categorical) {
      c.categories = jc.at("categories").get<std::vector<std::string>>();
    } else {
      c.observed_min = jc.at("min").get<double>();
      c.observed_max = jc.at("max").get<double>();
    }
    schema.push_back(std::move(c));
  }
  std::optional<Index> target;
  if (!j.at("target").is_null()) {
    const auto name = j.at("target").get<std::string>();
    for (std::size_t k = 0; k < schema.size(); ++k)
      if (schema[k].name == name) target = static_cast<Index>(k);
  }

  std::vector<std::unordered_map<std::string, double>> lookups(schema.size());
  for (std::size_t k = 0; k < schema.size(); ++k)
    for (std::size_t c = 0; c < schema[k].categories.size(); ++c)
      lookups[k].emplace(schema[k].categories[c], static_cast<double>(c));

  std::vector<std::vector<double>> cols(schema.size());
  const std::string text = read_file(csv_path);
  const std::string source = csv_path.filename().string();
  for_each_csv_record(text, [&](std::size_t rec, const std::vector<std::string>& fields) {
    if (fields.size() != schema.size())
      throw DataError(source + ": expected " + std::to_string(schema.size()) + " fields, found " +
                      std::to_string(fields.size()) + " at row " + std::to_string(rec));
    if (rec == 0) {
      for (std::size_t k = 0; k < fields.size(); ++k)
        if (fields[k] != schema[k].name)
          throw DataError(source + ": header '" + fields[k] + "' does not match schema '" + schema[k].name + "'");
      return;
    }
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (schema[k].kind == ColumnKind::Categorical && !fields[k].empty()) {
        auto it = lookups[k].find(fields[k]);
        if (it == lookups[k].end())
          throw DataError(source + ": unknown category '" + fields[k] + "' in column '" + schema[k].name + "'");
        cols[k].push_back(it->second);
      } else {
        double v = 0.0;
        if (!parse_number(fields[k], v))
          throw DataError(source + ": unparseable numeric cell '" + fields[k] + "' at row " + std::to_string(rec) +
                          ", column '" + schema[k].name + "'");
        cols[k].push_back(v);
      }
    }
  });
  const Index rows = schema.empty() ? 0 : static_cast<Index>(cols[0].size());
  Eigen::MatrixXd m(rows, static_cast<Index>(schema.size()));
  for (std::size_t k = 0; k < schema.size(); ++k)
    m.col(static_cast<Index>(k)) = Eigen::Map<const Eigen::VectorXd>(cols[k].data(), rows);
  DropCounts drops;
  if (j.contains("dropped")) {
    drops.rows = j["dropped"].value("rows", Index{0});
    drops.columns = j["dropped"].value("columns", std::vector<std::string>{});
  }
  return Dataset(std::move(schema), std::move(m), target).with_drops(std::move(drops));
}

}  // namespace synthbench
