#ifndef DPPNET_PATHLOSS_HPP
#define DPPNET_PATHLOSS_HPP

#include <algorithm>
#include <cmath>

#include "dppnet/errors.hpp"
#include "dppnet/geometry.hpp"

namespace dppnet {

// Non-increasing path loss l(x): bounded l(x) = min(1, |x|^-beta) or pure
// power law l(x) = |x|^-beta, beta > 2.
struct PathLossModel {
  enum class Kind { BoundedPower, PurePower };

  Kind kind = Kind::BoundedPower;
  double beta = 4.0;

  PathLossModel() = default;
  PathLossModel(Kind k, double b) : kind(k), beta(b) {
    if (!(beta > 2.0)) throw ConfigError("path loss exponent must be > 2");
  }
  static PathLossModel bounded(double beta) {
    return {Kind::BoundedPower, beta};
  }
  static PathLossModel pure(double beta) { return {Kind::PurePower, beta}; }

  double operator()(double r) const {
    const double p = std::pow(r, -beta);
    return kind == Kind::BoundedPower ? std::min(1.0, p) : p;
  }
  double operator()(const Vec2& x) const { return (*this)(x.norm()); }
};

}  // namespace dppnet

#endif
