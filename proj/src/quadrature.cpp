#include "dppnet/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "dppnet/errors.hpp"

namespace dppnet {

namespace {

// Nodes/weights on [-1, 1]; cached since orders repeat heavily.
const QuadRule& reference_rule(int n) {
  static std::map<int, QuadRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

QuadRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ConfigError("gauss_legendre: order must be >= 1");
  const QuadRule& ref = reference_rule(n);
  QuadRule out;
  out.nodes = 0.5 * (b - a) * ref.nodes + 0.5 * (a + b);
  out.weights = 0.5 * (b - a) * ref.weights;
  return out;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int n) {
  const QuadRule rule = gauss_legendre(n, a, b);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol) {
  if (!(b > a)) return 0.0;
  // Seed with fixed panels so narrow features cannot hide between the
  // initial Simpson nodes.
  const int seed_panels = 16;
  const double h = (b - a) / seed_panels;
  double total = 0.0;
  for (int p = 0; p < seed_panels; ++p) {
    const double x0 = a + p * h, x1 = x0 + h;
    const double m = 0.5 * (x0 + x1);
    const double f0 = f(x0), f1 = f(x1), fm = f(m);
    const double whole = simpson(x0, f0, x1, f1, fm);
    total += adaptive_step(f, x0, f0, x1, f1, m, fm, whole,
                           abs_tol / seed_panels, 48);
  }
  return total;
}

}  // namespace dppnet
