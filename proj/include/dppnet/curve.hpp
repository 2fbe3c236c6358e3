#ifndef DPPNET_CURVE_HPP
#define DPPNET_CURVE_HPP

#include <map>
#include <string>
#include <vector>

namespace dppnet {

// Sampled function r -> F(r) or T -> P(SIR > T): the universal output
// record. `value` holds the published (clamped/cleaned) ordinate, `raw`
// the value as computed; points whose raw value strayed more than 0.01
// outside what was published are marked unreliable.
struct CurveTable {
  std::vector<double> abscissa;
  std::vector<double> value;
  std::vector<double> raw;
  std::vector<bool> reliable;
  std::map<std::string, std::string> meta;

  std::size_t size() const { return abscissa.size(); }
  void push(double x, double v, double raw_v, bool ok) {
    abscissa.push_back(x);
    value.push_back(v);
    raw.push_back(raw_v);
    reliable.push_back(ok);
  }

  // CSV with header "abscissa,value,raw_value,reliable"; %.12g formatting,
  // byte-stable for identical inputs.
  std::string to_csv() const;
  std::string to_json() const;

  void write_csv(const std::string& path) const;
  void write_json(const std::string& path) const;
};

}  // namespace dppnet

#endif
