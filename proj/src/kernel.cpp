#include "dppnet/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "dppnet/errors.hpp"
#include "dppnet/quadrature.hpp"

namespace dppnet {

namespace detail {

// Covariance values on a uniform radial grid with cubic interpolation.
// Used for the GenGamma family, which is defined spectrally.
struct RadialTable {
  double rmax = 0.0;
  double step = 0.0;
  std::vector<double> values;

  double eval(double r) const {
    if (r >= rmax) return 0.0;
    const double t = r / step;
    const int n = static_cast<int>(values.size());
    int i = static_cast<int>(t);
    if (i > n - 2) i = n - 2;
    const double f = t - i;
    const double ym1 = values[std::max(i - 1, 0)];
    const double y0 = values[i];
    const double y1 = values[i + 1];
    const double y2 = values[std::min(i + 2, n - 1)];
    // Catmull-Rom
    return y0 + 0.5 * f *
                    (y1 - ym1 +
                     f * (2.0 * ym1 - 5.0 * y0 + 4.0 * y1 - y2 +
                          f * (3.0 * (y0 - y1) + y2 - ym1)));
  }
};

}  // namespace detail

namespace {

double gamma_fn(double x) { return std::tgamma(x); }

double spectral_radial_raw(Family family, double lambda, double alpha,
                           double nu, double rho) {
  switch (family) {
    case Family::Gauss:
      return lambda * M_PI * alpha * alpha *
             std::exp(-M_PI * M_PI * alpha * alpha * rho * rho);
    case Family::Cauchy: {
      // Fourier pair of lambda (1 + r^2/a^2)^{-(nu+1)}:
      //   phi(rho) = lambda 2 pi a^2 / Gamma(nu+1) (pi a rho)^nu K_nu(2 pi a rho)
      const double z = 2.0 * M_PI * alpha * rho;
      if (z < 1e-8) return lambda * M_PI * alpha * alpha / nu;
      const double knu = std::cyl_bessel_k(nu, z);
      if (knu == 0.0) return 0.0;  // underflow far in the tail
      return lambda * 2.0 * M_PI * alpha * alpha / gamma_fn(nu + 1.0) *
             std::pow(0.5 * z, nu) * knu;
    }
    case Family::GenGamma:
      return lambda * nu * alpha * alpha / (2.0 * M_PI * gamma_fn(2.0 / nu)) *
             std::exp(-std::pow(alpha * rho, nu));
    case Family::Poisson:
      throw ConfigError("spectral_density: no spectral representation for the "
                        "Poisson pseudo-family");
  }
  throw ConfigError("spectral_density: unknown family");
}

// Radius past which the spectral density is below ~1e-13 of its peak.
double spectral_tail_radius_raw(Family family, double alpha, double nu) {
  switch (family) {
    case Family::Gauss:
      return std::sqrt(30.0) / (M_PI * alpha);
    case Family::Cauchy:
      return 35.0 / (2.0 * M_PI * alpha);
    case Family::GenGamma:
      return std::pow(30.0, 1.0 / nu) / alpha;
    case Family::Poisson:
      return 0.0;
  }
  return 0.0;
}

// GenGamma covariance table: K0(r) = int phi(|xi|) e^{2 pi i xi.x} dxi is
// reduced to two nested 1-D integrals,
//   g(u) = 2 int_0^inf phi(sqrt(u^2+v^2)) dv,
//   K0(r) = 2 int_0^inf g(u) cos(2 pi r u) du,
// which avoids Bessel evaluations in the inner loop.
std::shared_ptr<const detail::RadialTable> build_gengamma_table(double lambda,
                                                                double alpha,
                                                                double nu) {
  static std::map<std::tuple<double, double, double>,
                  std::shared_ptr<const detail::RadialTable>>
      memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({lambda, alpha, nu});
    if (it != memo.end()) return it->second;
  }

  auto table = std::make_shared<detail::RadialTable>();
  const int n_grid = 4096;
  table->rmax = 10.0 * alpha;
  table->step = table->rmax / (n_grid - 1);
  table->values.resize(n_grid);

  const double rho_max = std::pow(46.0, 1.0 / nu) / alpha;
  const auto phi = [&](double rho) {
    return spectral_radial_raw(Family::GenGamma, lambda, alpha, nu, rho);
  };

  // Node count tracks the worst-case oscillation r_max * rho_max.
  const int cycles = static_cast<int>(std::ceil(table->rmax * rho_max));
  const int n_u = std::min(20000, std::max(768, 16 * cycles));
  const QuadRule u_rule = gauss_legendre(n_u, 0.0, rho_max);

  std::vector<double> g(n_u);
  for (int j = 0; j < n_u; ++j) {
    const double u = u_rule.nodes[j];
    const double vmax =
        std::sqrt(std::max(0.0, rho_max * rho_max - u * u)) + 1e-12;
    g[j] = 2.0 * integrate_gl(
                     [&](double v) { return phi(std::hypot(u, v)); }, 0.0,
                     vmax, 96);
  }
  for (int i = 0; i < n_grid; ++i) {
    const double r = i * table->step;
    double sum = 0.0;
    for (int j = 0; j < n_u; ++j) {
      sum += u_rule.weights[j] * g[j] * std::cos(2.0 * M_PI * r * u_rule.nodes[j]);
    }
    table->values[i] = 2.0 * sum;
  }

  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(std::make_tuple(lambda, alpha, nu), table).first->second;
}

std::string check_positive(Family family, double lambda, double alpha,
                           double nu) {
  if (!(lambda > 0.0)) return "lambda must be > 0";
  const bool needs_alpha = family != Family::Poisson;
  const bool needs_nu =
      family == Family::Cauchy || family == Family::GenGamma;
  if (needs_alpha && !(alpha > 0.0)) return "alpha must be > 0";
  if (needs_nu && !(nu > 0.0)) return "nu must be > 0";
  return {};
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Gauss: return "gauss";
    case Family::Cauchy: return "cauchy";
    case Family::GenGamma: return "gengamma";
    case Family::Poisson: return "poisson";
  }
  return "?";
}

ExistenceReport existence_check(Family family, double lambda, double alpha,
                                double nu) {
  ExistenceReport report;
  if (auto msg = check_positive(family, lambda, alpha, nu); !msg.empty()) {
    report.pass = false;
    report.message = msg;
    return report;
  }
  if (family == Family::Poisson) {
    report.pass = true;
    report.message = "poisson pseudo-family always exists";
    return report;
  }

  switch (family) {
    case Family::Gauss:
      report.max_spectral = lambda * M_PI * alpha * alpha;
      break;
    case Family::Cauchy:
      report.max_spectral = lambda * M_PI * alpha * alpha / nu;
      break;
    case Family::GenGamma:
      report.max_spectral =
          lambda * nu * alpha * alpha / (2.0 * M_PI * gamma_fn(2.0 / nu));
      break;
    default:
      break;
  }

  // Radial scan. The spectral profiles of all three families are strictly
  // decreasing in |xi|, so the scan should match phi(0); it is still run and
  // reported so that an off-origin supremum would surface as a violation.
  const double rho_hi = spectral_tail_radius_raw(family, alpha, nu);
  double scanned = 0.0;
  for (int i = 0; i < 2048; ++i) {
    const double rho = rho_hi * i / 2047.0;
    scanned = std::max(scanned,
                       spectral_radial_raw(family, lambda, alpha, nu, rho));
  }
  report.scanned_max = scanned;

  // Published fitted parameters can sit exactly on the existence boundary
  // and land a few 1e-4 outside it after table rounding (the Cauchy fits
  // do); a 1e-3 relative slack accepts those without admitting genuinely
  // infeasible models.
  const double sup = std::max(report.max_spectral, report.scanned_max);
  report.pass = sup <= 1.0 + 1e-3;
  std::ostringstream os;
  os << family_name(family) << ": sup spectral density = " << sup;
  if (sup <= 1.0) {
    os << " <= 1";
  } else if (report.pass) {
    os << " within rounding tolerance of the existence boundary";
  } else {
    os << " > 1 (DPP does not exist)";
  }
  report.message = os.str();
  return report;
}

ExistenceReport existence_check(const KernelModel& model) {
  return existence_check(model.family(), model.intensity(), model.alpha(),
                         model.nu());
}

KernelModel::KernelModel(Family f, double lambda, double alpha, double nu)
    : family_(f), lambda_(lambda), alpha_(alpha), nu_(nu) {
  if (auto msg = check_positive(f, lambda, alpha, nu); !msg.empty()) {
    throw ConfigError("KernelModel: " + msg);
  }
  const ExistenceReport report = existence_check(f, lambda, alpha, nu);
  if (!report.pass) throw ConfigError("KernelModel: " + report.message);
  if (f == Family::GenGamma) {
    gengamma_table_ = build_gengamma_table(lambda, alpha, nu);
  }
}

KernelModel KernelModel::gauss(double lambda, double alpha) {
  return KernelModel(Family::Gauss, lambda, alpha, 0.0);
}
KernelModel KernelModel::cauchy(double lambda, double alpha, double nu) {
  return KernelModel(Family::Cauchy, lambda, alpha, nu);
}
KernelModel KernelModel::gen_gamma(double lambda, double alpha, double nu) {
  return KernelModel(Family::GenGamma, lambda, alpha, nu);
}
KernelModel KernelModel::poisson(double lambda) {
  return KernelModel(Family::Poisson, lambda, 0.0, 0.0);
}

double KernelModel::covariance_radial(double r) const {
  switch (family_) {
    case Family::Gauss:
      return lambda_ * std::exp(-r * r / (alpha_ * alpha_));
    case Family::Cauchy:
      return lambda_ /
             std::pow(1.0 + r * r / (alpha_ * alpha_), nu_ + 1.0);
    case Family::GenGamma:
      return gengamma_table_->eval(r);
    case Family::Poisson:
      // No pointwise kernel; determinantal sums use the lambda^n rule.
      return r == 0.0 ? lambda_ : 0.0;
  }
  return 0.0;
}

double KernelModel::spectral_density_radial(double rho) const {
  return spectral_radial_raw(family_, lambda_, alpha_, nu_, rho);
}

double KernelModel::interaction_range() const {
  return family_ == Family::Poisson ? 0.0 : 10.0 * alpha_;
}

double KernelModel::spectral_tail_radius() const {
  return spectral_tail_radius_raw(family_, alpha_, nu_);
}

std::string KernelModel::describe() const {
  std::ostringstream os;
  os << family_name(family_) << "(lambda=" << lambda_;
  if (family_ != Family::Poisson) os << ", alpha=" << alpha_;
  if (family_ == Family::Cauchy || family_ == Family::GenGamma) {
    os << ", nu=" << nu_;
  }
  os << ")";
  return os.str();
}

PalmKernel::PalmKernel(const KernelModel& base, const Vec2& anchor)
    : base_(base), anchor_(anchor) {
  if (!(base.covariance(Vec2::Zero()) > 0.0)) {
    throw ConfigError("PalmKernel: degenerate anchor, K(x0, x0) = 0");
  }
}

double PalmKernel::evaluate(const Vec2& x, const Vec2& y) const {
  const double k00 = base_.intensity();  // K(x0, x0) = K0(0)
  const double kxy = base_.covariance(x - y);
  const double kx0 = base_.covariance(x - anchor_);
  const double k0y = base_.covariance(anchor_ - y);
  return kxy - kx0 * k0y / k00;
}

PalmKernel palm_kernel(const KernelModel& model, const Vec2& anchor) {
  return PalmKernel(model, anchor);
}

RepulsivenessReport repulsiveness_mu(const KernelModel& model) {
  RepulsivenessReport r;
  r.family = model.family();
  r.lambda = model.intensity();
  r.alpha = model.alpha();
  r.nu = model.nu();
  const double lambda = r.lambda, alpha = r.alpha, nu = r.nu;
  switch (model.family()) {
    case Family::Gauss:
      r.mu = lambda * M_PI * alpha * alpha / 2.0;
      break;
    case Family::Cauchy:
      r.mu = lambda * M_PI * alpha * alpha / (2.0 * nu + 1.0);
      break;
    case Family::GenGamma:
      r.mu = lambda * nu * alpha * alpha /
             (std::pow(2.0, 1.0 + 2.0 / nu) * M_PI * gamma_fn(2.0 / nu));
      break;
    case Family::Poisson:
      r.mu = 0.0;
      break;
  }
  return r;
}

KernelModel preset(const std::string& name) {
  if (name == "houston-gauss") return KernelModel::gauss(0.4492, 0.8417);
  if (name == "houston-cauchy") return KernelModel::cauchy(0.4492, 1.558, 3.424);
  if (name == "houston-gengamma") {
    return KernelModel::gen_gamma(0.4492, 2.539, 2.63);
  }
  if (name == "la-gauss") return KernelModel::gauss(0.2347, 1.165);
  if (name == "la-cauchy") return KernelModel::cauchy(0.2347, 2.13, 3.344);
  if (name == "la-gengamma") {
    return KernelModel::gen_gamma(0.2347, 3.446, 2.505);
  }
  throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"houston-gauss", "houston-cauchy", "houston-gengamma",
          "la-gauss",      "la-cauchy",      "la-gengamma"};
}

}  // namespace dppnet
