#include "synthbench/pipeline/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "synthbench/data/csv_io.hpp"
#include "synthbench/util/error.hpp"
#include "synthbench/util/io.hpp"

namespace synthbench {

namespace fs = std::filesystem;

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 48.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string open_svg(double w, double h, const std::string& stamp) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\" font-family=\"sans-serif\" font-size=\"11\">\n<!-- " +
         escape(stamp) + " -->\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string polyline(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double x0, double x1, double ymax,
                     const char* colour) {
  std::string pts;
  const double span = x1 > x0 ? x1 - x0 : 1.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double px = kMargin + (x(i) - x0) / span * (kWidth - 2 * kMargin);
    const double py = kHeight - kMargin - y(i) / ymax * (kHeight - 2 * kMargin);
    pts += (i ? " " : "") + num(px) + "," + num(py);
  }
  return "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"" + pts +
         "\"/>\n";
}

/// Data rows of a CSV artifact with '#' comment lines skipped.
std::vector<std::vector<std::string>> read_csv_rows(const fs::path& path) {
  const auto text = read_file(path);
  std::string body;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    if (text[pos] != '#') body.append(text, pos, end - pos + 1);
    pos = end + 1;
  }
  std::vector<std::vector<std::string>> rows;
  for_each_csv_record(body, [&](std::size_t, const std::vector<std::string>& fields) { rows.push_back(fields); });
  return rows;
}

std::string stamp_of(const fs::path& path) {
  const auto text = read_file(path);
  if (text.rfind("# ", 0) != 0) return {};
  return text.substr(2, text.find('\n') - 2);
}

double cell(const std::string& s, const fs::path& path) {
  double v = 0.0;
  if (!parse_number(s, v)) throw DataError("non-numeric cell '" + s + "' in " + path.string());
  return v;
}

KdePair read_kde_csv(const fs::path& path) {
  const auto rows = read_csv_rows(path);
  if (rows.size() < 2) throw DataError("empty KDE file " + path.string());
  const auto n = static_cast<Index>(rows.size() - 1);
  KdePair pair;
  pair.real.grid.resize(n);
  pair.real.density.resize(n);
  pair.synth.density.resize(n);
  for (Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i + 1)];
    if (r.size() != 3) throw DataError("KDE file " + path.string() + " needs three columns");
    pair.real.grid(i) = cell(r[0], path);
    pair.real.density(i) = cell(r[1], path);
    pair.synth.density(i) = cell(r[2], path);
  }
  pair.synth.grid = pair.real.grid;
  return pair;
}

}  // namespace

std::string kde_svg(const KdePair& pair, const std::string& title, const std::string& stamp) {
  const auto& g = pair.real.grid;
  const double x0 = g.size() ? g.minCoeff() : 0.0;
  const double x1 = g.size() ? g.maxCoeff() : 1.0;
  double ymax = std::max(pair.real.density.size() ? pair.real.density.maxCoeff() : 0.0,
                         pair.synth.density.size() ? pair.synth.density.maxCoeff() : 0.0);
  if (!(ymax > 0.0)) ymax = 1.0;
  std::string s = open_svg(kWidth, kHeight, stamp);
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) +
       "</text>\n";
  s += "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" + num(kWidth - 2 * kMargin) +
       "\" height=\"" + num(kHeight - 2 * kMargin) + "\" fill=\"none\" stroke=\"#999\"/>\n";
  s += polyline(g, pair.real.density, x0, x1, ymax, "#1f77b4");
  s += polyline(pair.synth.grid, pair.synth.density, x0, x1, ymax, "#d62728");
  s += "<text x=\"" + num(kMargin) + "\" y=\"" + num(kHeight - 20) + "\">" + num(x0) + "</text>\n";
  s += "<text x=\"" + num(kWidth - kMargin) + "\" y=\"" + num(kHeight - 20) + "\" text-anchor=\"end\">" + num(x1) +
       "</text>\n";
  s += "<text x=\"" + num(kWidth - kMargin) + "\" y=\"" + num(kMargin - 8) +
       "\" text-anchor=\"end\"><tspan fill=\"#1f77b4\">real</tspan> <tspan fill=\"#d62728\">synthetic</tspan></text>\n";
  return s + "</svg>\n";
}

std::string heatmap_svg(const Eigen::MatrixXd& m, const std::vector<std::string>& names, const std::string& title,
                        const std::string& stamp) {
  constexpr double cell_size = 18.0;
  constexpr double label = 140.0;
  const double w = label + cell_size * static_cast<double>(m.cols()) + 20.0;
  const double h = 40.0 + cell_size * static_cast<double>(m.rows()) + label;
  std::string s = open_svg(w, h, stamp);
  s += "<text x=\"" + num(w / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) + "</text>\n";
  for (Index i = 0; i < m.rows(); ++i) {
    const double y = 40.0 + cell_size * static_cast<double>(i);
    if (static_cast<std::size_t>(i) < names.size())
      s += "<text x=\"" + num(label - 4) + "\" y=\"" + num(y + 13) + "\" text-anchor=\"end\">" +
           escape(names[static_cast<std::size_t>(i)]) + "</text>\n";
    for (Index j = 0; j < m.cols(); ++j) {
      const double v = std::clamp(std::isfinite(m(i, j)) ? m(i, j) : 0.0, 0.0, 1.0);
      const int shade = static_cast<int>(std::lround(255.0 * (1.0 - v)));
      s += "<rect x=\"" + num(label + cell_size * static_cast<double>(j)) + "\" y=\"" + num(y) + "\" width=\"" +
           num(cell_size) + "\" height=\"" + num(cell_size) + "\" fill=\"rgb(255," + std::to_string(shade) + "," +
           std::to_string(shade) + ")\"><title>" + num(m(i, j)) + "</title></rect>\n";
    }
  }
  const double base = 40.0 + cell_size * static_cast<double>(m.rows()) + 4.0;
  for (Index j = 0; j < m.cols() && static_cast<std::size_t>(j) < names.size(); ++j) {
    const double x = label + cell_size * (static_cast<double>(j) + 0.5);
    s += "<text transform=\"translate(" + num(x) + "," + num(base) + ") rotate(60)\">" +
         escape(names[static_cast<std::size_t>(j)]) + "</text>\n";
  }
  return s + "</svg>\n";
}

std::size_t render_plots(const fs::path& run_dir) {
  const auto methods = run_dir / "methods";
  if (!fs::is_directory(methods)) throw DataError("missing run artifact " + methods.string());
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(methods))
    if (e.is_directory()) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());

  std::size_t written = 0;
  for (const auto& dir : dirs) {
    const auto status_path = dir / "status.json";
    if (!fs::exists(status_path)) throw DataError("missing run artifact " + status_path.string());
    if (nlohmann::json::parse(read_file(status_path)).at("status") != "ok") continue;
    const auto method = dir.filename().string();
    for (const auto* which : {"corr_real", "corr_synth", "corr_diff"}) {
      const auto path = dir / (std::string(which) + ".csv");
      if (!fs::exists(path)) throw DataError("missing metric artifact " + path.string());
      const auto rows = read_csv_rows(path);
      if (rows.empty()) throw DataError("empty correlation file " + path.string());
      const std::vector<std::string> names(rows[0].begin() + 1, rows[0].end());
      const auto n = static_cast<Index>(names.size());
      Eigen::MatrixXd m(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
          m(i, j) = cell(rows.at(static_cast<std::size_t>(i + 1)).at(static_cast<std::size_t>(j + 1)), path);
      auto out = path;
      write_file_atomic(out.replace_extension(".svg"), heatmap_svg(m, names, method + " " + which, stamp_of(path)));
      ++written;
    }
    if (!fs::is_directory(dir / "kde")) continue;
    std::vector<fs::path> curves;
    for (const auto& e : fs::directory_iterator(dir / "kde"))
      if (e.path().extension() == ".csv") curves.push_back(e.path());
    std::sort(curves.begin(), curves.end());
    for (const auto& path : curves) {
      auto out = path;
      write_file_atomic(out.replace_extension(".svg"),
                        kde_svg(read_kde_csv(path), method + " " + path.stem().string(), stamp_of(path)));
      ++written;
    }
  }
  return written;
}

}  // namespace synthbench
