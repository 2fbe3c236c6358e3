#ifndef DPPNET_BESSEL_HPP
#define DPPNET_BESSEL_HPP

namespace dppnet {

// Modified Bessel function of the first kind, order zero, z >= 0.
// Relative error <= 1e-12 over the representable range.
double bessel_i0(double z);

// exp(-z) * I0(z); stays bounded for all z >= 0 and never overflows.
double bessel_i0_scaled(double z);

}  // namespace dppnet

#endif
