#include "dppnet/data_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dppnet/errors.hpp"

namespace dppnet {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding whitespace
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return cells;
}

double parse_number(const std::string& s, int line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("load_pattern: non-numeric value '" + s + "' at line " +
                      std::to_string(line_no));
  }
  if (used != s.size()) {
    throw ConfigError("load_pattern: non-numeric value '" + s + "' at line " +
                      std::to_string(line_no));
  }
  return v;
}

}  // namespace

Dataset load_pattern(const std::string& path, const LoadOptions& opt) {
  std::ifstream f(path);
  if (!f) throw ConfigError("load_pattern: cannot read " + path);

  std::string line;
  if (!std::getline(f, line)) {
    throw ConfigError("load_pattern: empty file " + path);
  }
  const std::vector<std::string> header = split_csv_line(line);
  int xi = -1, yi = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == opt.x_column) xi = static_cast<int>(i);
    if (header[i] == opt.y_column) yi = static_cast<int>(i);
  }
  if (xi < 0 || yi < 0) {
    throw ConfigError("load_pattern: header must contain columns '" +
                      opt.x_column + "' and '" + opt.y_column + "'");
  }

  std::vector<Vec2> raw;
  int line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) <= std::max(xi, yi)) {
      throw ConfigError("load_pattern: short row at line " +
                        std::to_string(line_no));
    }
    raw.emplace_back(parse_number(cells[xi], line_no),
                     parse_number(cells[yi], line_no));
  }

  Dataset ds;
  ds.source = path;
  const auto slash = path.find_last_of('/');
  ds.name = slash == std::string::npos ? path : path.substr(slash + 1);

  Window w;
  if (opt.window) {
    w = *opt.window;
  } else {
    if (raw.empty()) throw ConfigError("load_pattern: no points in " + path);
    double x0 = raw[0].x(), x1 = raw[0].x(), y0 = raw[0].y(), y1 = raw[0].y();
    for (const Vec2& p : raw) {
      x0 = std::min(x0, p.x());
      x1 = std::max(x1, p.x());
      y0 = std::min(y0, p.y());
      y1 = std::max(y1, p.y());
    }
    w = {x0, y0, x1, y1};
  }
  if (!(w.area() > 0.0)) {
    throw ConfigError("load_pattern: window has zero area");
  }
  ds.pattern.window = w;

  for (const Vec2& p : raw) {
    if (!w.contains(p)) {
      std::ostringstream os;
      os << "point (" << p.x() << ", " << p.y() << ") outside window";
      ds.warnings.push_back(os.str());
      continue;
    }
    bool dup = false;
    for (const Vec2& q : ds.pattern.points) {
      if (q == p) {
        dup = true;
        break;
      }
    }
    if (dup) {
      ++ds.duplicates_removed;
    } else {
      ds.pattern.points.push_back(p);
    }
  }
  if (ds.pattern.empty()) {
    throw ConfigError("load_pattern: no points left after filtering " + path);
  }
  return ds;
}

void save_pattern(const PointPattern& pattern, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("save_pattern: cannot write " + path);
  f << "x_km,y_km\n";
  char buf[64];
  for (const Vec2& p : pattern.points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.x(), p.y());
    f << buf;
  }
}

double estimate_intensity(const Dataset& dataset) {
  if (dataset.pattern.empty()) {
    throw ConfigError("estimate_intensity: empty dataset");
  }
  return dataset.pattern.size() / dataset.pattern.window.area();
}

KernelModel model_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("model config: invalid JSON: ") + e.what());
  }
  if (j.contains("preset")) return preset(j["preset"].get<std::string>());
  if (!j.contains("family")) {
    throw ConfigError("model config: 'family' or 'preset' required");
  }
  const std::string fam = j["family"].get<std::string>();
  const double lambda = j.value("lambda", 0.0);
  const double alpha = j.value("alpha", 0.0);
  const double nu = j.value("nu", 0.0);
  if (fam == "gauss") return KernelModel::gauss(lambda, alpha);
  if (fam == "cauchy") return KernelModel::cauchy(lambda, alpha, nu);
  if (fam == "gengamma") return KernelModel::gen_gamma(lambda, alpha, nu);
  if (fam == "poisson") return KernelModel::poisson(lambda);
  throw ConfigError("model config: unknown family '" + fam + "'");
}

}  // namespace dppnet
