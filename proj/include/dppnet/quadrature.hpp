#ifndef DPPNET_QUADRATURE_HPP
#define DPPNET_QUADRATURE_HPP

#include <Eigen/Core>
#include <functional>

namespace dppnet {

struct QuadRule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
};

// Gauss-Legendre rule with n points on [a, b]. Nodes are computed by Newton
// iteration on the Legendre polynomial and cached per order.
QuadRule gauss_legendre(int n, double a, double b);

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int n);

// Adaptive Simpson with absolute tolerance; depth-limited.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol);

}  // namespace dppnet

#endif
