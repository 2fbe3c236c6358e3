#ifndef DPPNET_PATTERN_HPP
#define DPPNET_PATTERN_HPP

#include <vector>

#include "dppnet/geometry.hpp"

namespace dppnet {

// A finite planar point set with its observation window, km units.
struct PointPattern {
  std::vector<Vec2> points;
  Window window;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  double intensity() const {
    return window.area() > 0.0 ? points.size() / window.area() : 0.0;
  }
};

}  // namespace dppnet

#endif
