#ifndef DPPNET_DATA_IO_HPP
#define DPPNET_DATA_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "dppnet/kernel.hpp"
#include "dppnet/pattern.hpp"

namespace dppnet {

struct Dataset {
  PointPattern pattern;
  std::string name;
  std::string source;
  std::vector<std::string> warnings;  // one entry per rejected point
  int duplicates_removed = 0;
};

struct LoadOptions {
  std::string x_column = "x_km";
  std::string y_column = "y_km";
  std::optional<Window> window;  // explicit; otherwise the bounding box
};

// CSV with a header naming the coordinate columns (km units). Points
// outside the declared window are rejected into the warning list,
// duplicate coordinates removed with a count.
Dataset load_pattern(const std::string& path, const LoadOptions& opt = {});

// Writes x_km,y_km rows with full double precision (loads back exactly).
void save_pattern(const PointPattern& pattern, const std::string& path);

double estimate_intensity(const Dataset& dataset);

// Kernel config block {"family": ..., "lambda": ..., "alpha": ..., "nu":
// ...} or {"preset": name}, parsed from a JSON string.
KernelModel model_from_json_text(const std::string& text);

}  // namespace dppnet

#endif
