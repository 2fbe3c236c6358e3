#include "dppnet/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace dppnet {

namespace {

// Power series sum_k (z^2/4)^k / (k!)^2. All terms positive, no cancellation;
// converges for every z but the term count grows like z/2, so it is only used
// below the asymptotic switchover.
double i0_series(double z) {
  const double q = 0.25 * z * z;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// Scaled asymptotic expansion: e^{-z} I0(z) ~ (2 pi z)^{-1/2} sum_k a_k with
// a_k = ((2k-1)!!)^2 / (k! (8z)^k). Truncated at the smallest term; accurate
// to better than 1e-12 for z >= 40.
double i0e_asymptotic(double z) {
  const double inv8z = 1.0 / (8.0 * z);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * odd * odd * inv8z / k;
    if (next >= term) break;  // asymptotic series started diverging
    term = next;
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum / std::sqrt(2.0 * M_PI * z);
}

constexpr double kSwitch = 40.0;

}  // namespace

double bessel_i0(double z) {
  if (!(z >= 0.0)) throw std::domain_error("bessel_i0: z must be >= 0");
  if (z <= kSwitch) return i0_series(z);
  return std::exp(z) * i0e_asymptotic(z);  // overflows to inf past z ~ 713
}

double bessel_i0_scaled(double z) {
  if (!(z >= 0.0)) throw std::domain_error("bessel_i0_scaled: z must be >= 0");
  if (z <= kSwitch) return std::exp(-z) * i0_series(z);
  return i0e_asymptotic(z);
}

}  // namespace dppnet
