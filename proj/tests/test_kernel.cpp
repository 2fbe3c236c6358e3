#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dppnet/errors.hpp"
#include "dppnet/kernel.hpp"
#include "dppnet/quadrature.hpp"
#include "dppnet/rng.hpp"
#include "oracles.hpp"

using namespace dppnet;

TEST_CASE("covariance closed forms") {
  const KernelModel gauss = preset("houston-gauss");
  CHECK(gauss.covariance(Vec2::Zero()) == doctest::Approx(0.4492).epsilon(1e-12));
  // at |x| = alpha the exponent is exactly -1
  CHECK(gauss.covariance(Vec2(0.8417, 0.0)) ==
        doctest::Approx(0.4492 / std::exp(1.0)).epsilon(1e-12));

  const KernelModel cauchy = preset("houston-cauchy");
  CHECK(cauchy.covariance(Vec2::Zero()) ==
        doctest::Approx(0.4492).epsilon(1e-12));
}

TEST_CASE("gauss spectral density against the Fourier integral") {
  const KernelModel m = preset("houston-gauss");
  const double lambda = 0.4492, alpha = 0.8417;
  const double at0 = lambda * M_PI * alpha * alpha;
  CHECK(m.spectral_density(Vec2::Zero()) == doctest::Approx(at0).epsilon(1e-12));
  // numerical transform of the covariance (independent Hankel route)
  const double num = oracles::hankel_transform(
      [&](double r) { return m.covariance_radial(r); }, 0.0, 12.0 * alpha);
  CHECK(num == doctest::Approx(at0).epsilon(1e-9));
  // decays to zero
  CHECK(m.spectral_density(Vec2(50.0, 0.0)) < 1e-12);
}

TEST_CASE("gengamma spectral density at the origin") {
  const KernelModel m = preset("la-gengamma");
  const double lambda = 0.2347, alpha = 3.446, nu = 2.505;
  const double expect = lambda * nu * alpha * alpha /
                        (2.0 * M_PI * std::tgamma(2.0 / nu));
  CHECK(m.spectral_density(Vec2::Zero()) ==
        doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("cauchy spectral closed form validated against the transform oracle") {
  // The closed form is a derived Bessel-K expression; trust it only after
  // it matches the numerical Fourier transform at random frequencies.
  const KernelModel m = preset("houston-cauchy");
  const double alpha = 1.558;
  Rng rng(42);
  for (int i = 0; i < 8; ++i) {
    const double rho = rng.uniform(0.02, 1.0) / alpha;
    const double closed = m.spectral_density_radial(rho);
    const double numeric = oracles::hankel_transform(
        [&](double r) { return m.covariance_radial(r); }, rho, 14.0 * alpha,
        96, 32);
    CHECK(std::abs(closed - numeric) <= 1e-6 * std::abs(numeric));
  }
}

TEST_CASE("gengamma covariance table against the Hankel oracle") {
  const KernelModel m = preset("houston-gengamma");
  const double lambda = 0.4492, alpha = 2.539, nu = 2.63;
  // K0(0) recovers the intensity
  CHECK(std::abs(m.covariance(Vec2::Zero()) - lambda) <= 1e-6 * lambda);

  const double rho_max = std::pow(46.0, 1.0 / nu) / alpha;
  for (double r : {0.33, 1.1, 2.7, 5.0, 9.0}) {
    const double oracle = oracles::hankel_transform(
        [&](double rho) { return m.spectral_density_radial(rho); }, r, rho_max,
        96, 32);
    CHECK(std::abs(m.covariance_radial(r) - oracle) <= 1e-6 * lambda);
  }
}

TEST_CASE("existence checks") {
  // Table-fitted parameters are feasible
  const ExistenceReport ok = existence_check(Family::Gauss, 0.4492, 0.8417, 0);
  CHECK(ok.pass);
  CHECK(ok.max_spectral ==
        doctest::Approx(0.4492 * M_PI * 0.8417 * 0.8417).epsilon(1e-12));
  CHECK(ok.max_spectral < 1.0);
  CHECK(ok.scanned_max <= ok.max_spectral + 1e-12);

  const ExistenceReport bad = existence_check(Family::Gauss, 1.0, 1.0, 0);
  CHECK_FALSE(bad.pass);  // lambda pi alpha^2 = pi > 1
  CHECK(bad.max_spectral == doctest::Approx(M_PI).epsilon(1e-12));

  CHECK(existence_check(Family::Cauchy, 0.2347, 2.13, 3.344).pass);
  CHECK(existence_check(Family::Poisson, 0.5, 0, 0).pass);
  CHECK_FALSE(existence_check(Family::Gauss, -1.0, 1.0, 0).pass);

  CHECK_THROWS_AS(KernelModel::gauss(1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(KernelModel::gauss(0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(KernelModel::cauchy(0.1, 1.0, -2.0), ConfigError);
  for (const auto& name : preset_names()) {
    CHECK(existence_check(preset(name)).pass);
  }
}

TEST_CASE("spectral density stays in [0,1] for random feasible parameters") {
  Rng rng(123);
  for (int trial = 0; trial < 9; ++trial) {
    const double alpha = rng.uniform(0.3, 3.0);
    const double nu = rng.uniform(0.6, 5.0);
    const Family fam = trial % 3 == 0   ? Family::Gauss
                       : trial % 3 == 1 ? Family::Cauchy
                                        : Family::GenGamma;
    double bound = 0.0;
    switch (fam) {
      case Family::Gauss: bound = 1.0 / (M_PI * alpha * alpha); break;
      case Family::Cauchy: bound = nu / (M_PI * alpha * alpha); break;
      case Family::GenGamma:
        bound = 2.0 * M_PI * std::tgamma(2.0 / nu) / (nu * alpha * alpha);
        break;
      default: break;
    }
    const double lambda = rng.uniform(0.2, 0.999) * bound;
    const KernelModel model =
        fam == Family::Gauss    ? KernelModel::gauss(lambda, alpha)
        : fam == Family::Cauchy ? KernelModel::cauchy(lambda, alpha, nu)
                                : KernelModel::gen_gamma(lambda, alpha, nu);
    const double rho_hi = 40.0 / alpha;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double rho = rho_hi * i / 9999.0;
      const double v = model.spectral_density_radial(rho);
      CHECK(v >= 0.0);
      worst = std::max(worst, v);
    }
    CHECK(worst <= 1.0 + 1e-12);
  }
}

TEST_CASE("palm kernel basics") {
  const KernelModel m = preset("houston-gauss");
  const Vec2 anchor(0.7, -0.2);
  const PalmKernel palm(m, anchor);
  CHECK(palm.evaluate(anchor, anchor) == doctest::Approx(0.0).epsilon(1e-15));
  // far from the anchor the cross terms vanish
  const Vec2 far = anchor + Vec2(20.0 * 0.8417, 0.0);
  CHECK(std::abs(palm.evaluate(far, far) - m.intensity()) <= 1e-9);
  // symmetry
  const Vec2 x(0.1, 0.4), y(-0.5, 0.3);
  CHECK(palm.evaluate(x, y) == doctest::Approx(palm.evaluate(y, x)));
  CHECK(m.covariance(x - y) == doctest::Approx(m.covariance(y - x)));
  // diagonal stays nonnegative
  CHECK(palm.diag(Vec2(0.71, -0.21)) >= 0.0);
}

namespace {

// Palm determinant identity: det over the reduced kernel of n points equals
// the (n+1)-point determinant over the base kernel divided by K(x0,x0).
double palm_identity_rel_error(const KernelModel& m, Rng& rng, int n) {
  const double spread = 4.0 * m.alpha();
  const Vec2 anchor(rng.uniform(-spread, spread), rng.uniform(-spread, spread));
  std::vector<Vec2> pts;
  for (int i = 0; i < n; ++i) {
    pts.emplace_back(rng.uniform(-spread, spread), rng.uniform(-spread, spread));
  }
  const PalmKernel palm(m, anchor);

  std::vector<std::vector<long double>> palm_gram(n,
                                                  std::vector<long double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      palm_gram[i][j] = palm.evaluate(pts[i], pts[j]);
    }
  }
  std::vector<std::vector<long double>> base(n + 1,
                                             std::vector<long double>(n + 1));
  std::vector<Vec2> all{anchor};
  all.insert(all.end(), pts.begin(), pts.end());
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      base[i][j] = m.covariance(all[i] - all[j]);
    }
  }
  const long double lhs = oracles::cofactor_det(palm_gram);
  const long double rhs = oracles::cofactor_det(base) / m.intensity();
  const long double scale = std::max(
      {std::abs(static_cast<double>(lhs)), std::abs(static_cast<double>(rhs)),
       1e-300});
  return static_cast<double>(std::abs(lhs - rhs) / scale);
}

}  // namespace

TEST_CASE("palm determinant identity for three points") {
  const KernelModel m = preset("houston-gauss");
  Rng rng(2024);
  for (int i = 0; i < 5; ++i) {
    CHECK(palm_identity_rel_error(m, rng, 3) <= 1e-10);
  }
}

TEST_CASE("palm determinant identity: 100 random configurations") {
  // all three DPP families, n <= 5
  const KernelModel models[] = {preset("houston-gauss"),
                                preset("houston-cauchy"),
                                preset("houston-gengamma")};
  Rng rng(91);
  for (int trial = 0; trial < 100; ++trial) {
    const KernelModel& m = models[trial % 3];
    const int n = 1 + static_cast<int>(rng.uniform() * 5);
    CHECK(palm_identity_rel_error(m, rng, std::min(n, 5)) <= 1e-10);
  }
}

TEST_CASE("repulsiveness golden values") {
  CHECK(repulsiveness_mu(preset("houston-gauss")).mu ==
        doctest::Approx(0.4999).epsilon(1e-3));
  CHECK(repulsiveness_mu(preset("houston-cauchy")).mu ==
        doctest::Approx(0.4365).epsilon(1e-3));
  CHECK(repulsiveness_mu(preset("houston-gengamma")).mu ==
        doctest::Approx(0.5905).epsilon(1e-3));
  CHECK(repulsiveness_mu(preset("la-gauss")).mu ==
        doctest::Approx(0.5004).epsilon(1e-3));
  CHECK(repulsiveness_mu(preset("la-cauchy")).mu ==
        doctest::Approx(0.4351).epsilon(1e-3));
  CHECK(repulsiveness_mu(preset("la-gengamma")).mu ==
        doctest::Approx(0.5479).epsilon(1e-3));
  CHECK(repulsiveness_mu(KernelModel::poisson(0.4492)).mu == 0.0);
}

TEST_CASE("repulsiveness ordering of the fitted models") {
  for (const std::string city : {"houston", "la"}) {
    const double g = repulsiveness_mu(preset(city + "-gauss")).mu;
    const double c = repulsiveness_mu(preset(city + "-cauchy")).mu;
    const double gg = repulsiveness_mu(preset(city + "-gengamma")).mu;
    CHECK(gg > g);
    CHECK(g > c);
    CHECK(c > 0.0);
    CHECK(gg <= 1.0);
  }
}

TEST_CASE("repulsiveness against the defining integral") {
  // mu = (1/lambda) int K0(x)^2 dx, radial quadrature
  for (const char* name : {"houston-gauss", "houston-cauchy"}) {
    const KernelModel m = preset(name);
    const double mu = repulsiveness_mu(m).mu;
    const double integral = 2.0 * M_PI *
                            integrate_gl(
                                [&](double r) {
                                  const double k = m.covariance_radial(r);
                                  return r * k * k;
                                },
                                0.0, m.interaction_range(), 512) /
                            m.intensity();
    CHECK(mu == doctest::Approx(integral).epsilon(1e-4));
  }
}

TEST_CASE("poisson pseudo-family") {
  const KernelModel p = KernelModel::poisson(0.4492);
  CHECK(p.is_poisson());
  CHECK(p.covariance(Vec2::Zero()) == doctest::Approx(0.4492));
  CHECK_THROWS_AS(p.spectral_density(Vec2::Zero()), ConfigError);
  CHECK_THROWS_AS(preset("nonexistent"), ConfigError);
}
