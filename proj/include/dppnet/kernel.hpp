#ifndef DPPNET_KERNEL_HPP
#define DPPNET_KERNEL_HPP

#include <memory>
#include <string>
#include <vector>

#include "dppnet/geometry.hpp"

namespace dppnet {

enum class Family { Gauss, Cauchy, GenGamma, Poisson };

std::string family_name(Family f);

struct ExistenceReport {
  bool pass = false;
  // sup of the spectral density from the closed-form parameter condition
  // (phi(0) for all three DPP families).
  double max_spectral = 0.0;
  // Independent radial-grid scan of the spectral density. The scan and the
  // closed form must agree; both are reported so a profile whose maximum
  // moved off the origin would be caught rather than silently accepted.
  double scanned_max = 0.0;
  std::string message;
};

ExistenceReport existence_check(Family family, double lambda, double alpha,
                                double nu);

namespace detail {
struct RadialTable;
}

// A stationary DPP kernel family (or the Poisson pseudo-family, whose
// determinantal sums degenerate to lambda^n and which has no pointwise
// kernel). Instances are immutable; the GenGamma radial table is built
// eagerly at construction so reads are lock-free.
class KernelModel {
 public:
  static KernelModel gauss(double lambda, double alpha);
  static KernelModel cauchy(double lambda, double alpha, double nu);
  static KernelModel gen_gamma(double lambda, double alpha, double nu);
  static KernelModel poisson(double lambda);

  Family family() const { return family_; }
  double intensity() const { return lambda_; }
  double alpha() const { return alpha_; }
  double nu() const { return nu_; }
  bool is_poisson() const { return family_ == Family::Poisson; }

  // Covariance K0 at a planar displacement, points/km^2.
  double covariance(const Vec2& displacement) const {
    return covariance_radial(displacement.norm());
  }
  double covariance_radial(double r) const;

  // Spectral density at a planar frequency, dimensionless in [0, 1].
  // Throws ConfigError for the Poisson pseudo-family.
  double spectral_density(const Vec2& xi) const {
    return spectral_density_radial(xi.norm());
  }
  double spectral_density_radial(double rho) const;

  // Radius beyond which the covariance is treated as zero.
  double interaction_range() const;

  // Frequency radius past which the spectral density is negligible
  // (~1e-13 of its peak). Drives spectral truncation in the sampler.
  double spectral_tail_radius() const;

  std::string describe() const;

 private:
  KernelModel(Family f, double lambda, double alpha, double nu);

  Family family_;
  double lambda_;
  double alpha_;
  double nu_;
  std::shared_ptr<const detail::RadialTable> gengamma_table_;
};

ExistenceReport existence_check(const KernelModel& model);

// Reduced Palm kernel at an anchor point:
//   K!(x, y) = [K(x,y) K(x0,x0) - K(x,x0) K(x0,y)] / K(x0,x0).
// The anchor itself is removed: evaluate(anchor, anchor) = 0.
class PalmKernel {
 public:
  PalmKernel(const KernelModel& base, const Vec2& anchor);

  double evaluate(const Vec2& x, const Vec2& y) const;
  double diag(const Vec2& x) const { return evaluate(x, x); }

  const KernelModel& base() const { return base_; }
  const Vec2& anchor() const { return anchor_; }

 private:
  KernelModel base_;
  Vec2 anchor_;
};

PalmKernel palm_kernel(const KernelModel& model, const Vec2& anchor);

struct RepulsivenessReport {
  double mu = 0.0;  // in [0, 1]: 0 for Poisson, 1 in the grid limit
  Family family = Family::Poisson;
  double lambda = 0.0;
  double alpha = 0.0;
  double nu = 0.0;
};

RepulsivenessReport repulsiveness_mu(const KernelModel& model);

// Non-owning view over either a stationary kernel or a reduced Palm kernel,
// consumed by the determinantal-series evaluator. For the Poisson
// pseudo-family poisson_rule() is set and determinants degenerate to
// intensity^n; the pointwise accessors are never used on that path.
class KernelOperator {
 public:
  explicit KernelOperator(const KernelModel& base)
      : base_(&base), palm_(nullptr) {}
  explicit KernelOperator(const PalmKernel& palm)
      : base_(&palm.base()), palm_(&palm) {}

  double eval(const Vec2& x, const Vec2& y) const {
    return palm_ ? palm_->evaluate(x, y) : base_->covariance(x - y);
  }
  double diag(const Vec2& x) const {
    return palm_ ? palm_->diag(x) : base_->intensity();
  }
  bool poisson_rule() const { return base_->is_poisson(); }
  double intensity() const { return base_->intensity(); }
  const KernelModel& model() const { return *base_; }

 private:
  const KernelModel* base_;
  const PalmKernel* palm_;
};

// Fitted parameter presets: houston-gauss, houston-cauchy, houston-gengamma,
// la-gauss, la-cauchy, la-gengamma.
KernelModel preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace dppnet

#endif
