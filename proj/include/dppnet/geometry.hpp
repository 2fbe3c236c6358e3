#ifndef DPPNET_GEOMETRY_HPP
#define DPPNET_GEOMETRY_HPP

#include <Eigen/Core>
#include <cmath>

namespace dppnet {

using Vec2 = Eigen::Vector2d;

// Axis-aligned rectangle, km units.
struct Window {
  double x0 = 0.0, y0 = 0.0;
  double x1 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  Vec2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains(const Vec2& p) const {
    return p.x() >= x0 && p.x() <= x1 && p.y() >= y0 && p.y() <= y1;
  }
  Window padded(double m) const { return {x0 - m, y0 - m, x1 + m, y1 + m}; }

  static Window square(double side) { return {0.0, 0.0, side, side}; }
};

// Annulus inner <= |x| <= outer centered at the origin; inner = 0 gives a disk.
struct RadialDomain {
  double inner = 0.0;
  double outer = 0.0;

  double area() const { return M_PI * (outer * outer - inner * inner); }
  bool contains(const Vec2& p) const {
    const double r2 = p.squaredNorm();
    return r2 >= inner * inner && r2 <= outer * outer;
  }
  static RadialDomain disk(double r) { return {0.0, r}; }

  // Area-preserving map from the unit square.
  Vec2 map(double u, double v) const {
    const double r2 = inner * inner + u * (outer * outer - inner * inner);
    const double r = std::sqrt(r2);
    const double th = 2.0 * M_PI * v;
    return {r * std::cos(th), r * std::sin(th)};
  }
};

// Sample map from the unit square onto an annulus [inner, outer], uniform in
// area within each of two radial pieces split at `split`: the u-fraction
// `frac` covers [inner, split]. Lets an integrand whose mass concentrates in
// an inner region receive a fixed share of the sample budget; the per-point
// Jacobian carries the measure. frac = 1 with split = outer is the plain
// uniform map.
struct RadialMap {
  double inner = 0.0;
  double split = 0.0;
  double outer = 0.0;
  double frac = 1.0;

  double area() const { return M_PI * (outer * outer - inner * inner); }

  static RadialMap uniform(const RadialDomain& d) {
    return {d.inner, d.outer, d.outer, 1.0};
  }
  static RadialMap split_at(double inner, double split, double outer,
                            double frac) {
    return {inner, split, outer, frac};
  }

  Vec2 map(double u, double v, double* jacobian) const {
    double r2;
    if (u < frac || frac >= 1.0) {
      const double t = frac > 0.0 ? u / frac : 0.0;
      r2 = inner * inner + t * (split * split - inner * inner);
      *jacobian = M_PI * (split * split - inner * inner) / frac;
    } else {
      const double t = (u - frac) / (1.0 - frac);
      r2 = split * split + t * (outer * outer - split * split);
      *jacobian = M_PI * (outer * outer - split * split) / (1.0 - frac);
    }
    const double r = std::sqrt(r2);
    const double th = 2.0 * M_PI * v;
    return {r * std::cos(th), r * std::sin(th)};
  }
};

}  // namespace dppnet

#endif
