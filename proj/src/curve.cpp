#include "dppnet/curve.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "dppnet/errors.hpp"

namespace dppnet {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string CurveTable::to_csv() const {
  std::string out = "abscissa,value,raw_value,reliable\n";
  for (std::size_t i = 0; i < size(); ++i) {
    out += fmt(abscissa[i]);
    out += ',';
    out += fmt(value[i]);
    out += ',';
    out += fmt(raw[i]);
    out += ',';
    out += reliable[i] ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string CurveTable::to_json() const {
  nlohmann::json j;
  j["meta"] = meta;
  j["abscissa"] = abscissa;
  j["value"] = value;
  j["raw_value"] = raw;
  std::vector<int> rel(reliable.begin(), reliable.end());
  j["reliable"] = rel;
  return j.dump(2);
}

void CurveTable::write_csv(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  f << to_csv();
}

void CurveTable::write_json(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  f << to_json();
}

}  // namespace dppnet
