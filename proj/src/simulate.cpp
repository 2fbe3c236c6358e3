#include "dppnet/simulate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "dppnet/errors.hpp"
#include "dppnet/quadrature.hpp"

namespace dppnet {

namespace {

double resolve_margin(const SimConfig& cfg, bool for_coverage) {
  double m = cfg.margin;
  if (m < 0.0) {
    m = 0.0;
    if (cfg.model && !cfg.model->is_poisson()) m = 3.0 * cfg.model->alpha();
    if (cfg.hex) m = 2.0 * cfg.hex->cell_radius;
    if (for_coverage) {
      m = std::max(m, 0.2 * std::min(cfg.window.width(), cfg.window.height()));
    }
  }
  return m;
}

void check_config(const SimConfig& cfg) {
  if (cfg.model.has_value() == cfg.hex.has_value()) {
    throw ConfigError("SimConfig: exactly one of model or hex required");
  }
  if (cfg.replications < 1) throw ConfigError("SimConfig: replications >= 1");
  if (!(cfg.window.area() > 0.0)) throw ConfigError("SimConfig: empty window");
  if (cfg.hex) {
    if (!(cfg.hex->eta >= 0.0 && cfg.hex->eta <= 1.0)) {
      throw ConfigError("SimConfig: eta must be in [0, 1]");
    }
    if (!(cfg.hex->cell_radius > 0.0)) {
      throw ConfigError("SimConfig: cell_radius must be > 0");
    }
  }
}

// Spectral sampler for a stationary DPP on a torus [0,A] x [0,B]: Fourier
// mode k has eigenvalue phi(k1/A, k2/B) in [0,1]; a Bernoulli draw selects
// the modes of a projection DPP which is then sampled by the sequential
// conditional-density algorithm with uniform rejection proposals.
class SpectralSampler {
 public:
  SpectralSampler(const KernelModel& model, double A, double B)
      : A_(A), B_(B) {
    const double lambda = model.intensity();
    const double target_mass = lambda * A * B;
    const double rho = model.spectral_tail_radius();
    const long kx = static_cast<long>(std::ceil(rho * A));
    const long ky = static_cast<long>(std::ceil(rho * B));
    if ((2 * kx + 1) * (2 * ky + 1) > 4'000'000) {
      throw ConfigError("spectral sampler: mode lattice too large; shrink the "
                        "window or margin");
    }
    double kept = 0.0;
    for (long k1 = -kx; k1 <= kx; ++k1) {
      for (long k2 = -ky; k2 <= ky; ++k2) {
        const double p = model.spectral_density_radial(
            std::hypot(k1 / A, k2 / B));
        if (p > 1e-14) {
          wavevec_.emplace_back(2.0 * M_PI * k1 / A, 2.0 * M_PI * k2 / B);
          probs_.push_back(std::min(p, 1.0));
          kept += p;
        }
      }
    }
    if (target_mass - kept > 1e-4 * target_mass) {
      throw ConfigError("spectral sampler: truncation drops more than 1e-4 "
                        "of the spectral mass; enlarge the frequency cutoff");
    }
  }

  std::vector<Vec2> sample(Rng& rng) const {
    const std::vector<int> sel = select_modes(rng);
    return run_hkpv(rng, sel, nullptr);
  }

  std::vector<Vec2> sample_palm(Rng& rng, const Vec2& anchor) const {
    const std::vector<int> sel = select_modes(rng);
    return run_hkpv(rng, sel, &anchor);
  }

 private:
  std::vector<int> select_modes(Rng& rng) const {
    std::vector<int> sel;
    sel.reserve(probs_.size() / 4);
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      if (rng.uniform() < probs_[i]) sel.push_back(static_cast<int>(i));
    }
    return sel;
  }

  // Sequential sampling of the projection DPP spanned by the selected
  // modes. With an anchor, the first basis vector is pinned to psi(anchor),
  // which realizes the reduced Palm process at the anchor.
  std::vector<Vec2> run_hkpv(Rng& rng, const std::vector<int>& sel,
                             const Vec2* anchor) const {
    const int n = static_cast<int>(sel.size());
    std::vector<Vec2> out;
    if (n == 0) return out;

    Eigen::Matrix<double, Eigen::Dynamic, 2> waves(n, 2);
    for (int j = 0; j < n; ++j) {
      waves(j, 0) = wavevec_[sel[j]].x();
      waves(j, 1) = wavevec_[sel[j]].y();
    }
    const double inv_ab = 1.0 / (A_ * B_);
    const double psi_norm2 = n * inv_ab;

    Eigen::MatrixXcd basis(n, n);
    int got = 0;
    Eigen::VectorXcd psi(n), g(n);
    const auto eval_psi = [&](const Vec2& x) {
      const Eigen::VectorXd phase = waves * x;
      psi.real() = phase.array().cos() * std::sqrt(inv_ab);
      psi.imag() = phase.array().sin() * std::sqrt(inv_ab);
    };

    if (anchor) {
      eval_psi(*anchor);
      basis.row(0) = psi.transpose() / std::sqrt(psi_norm2);
      got = 1;
    }

    const int want = n;
    out.reserve(want - got);
    long proposals = 0;
    const long cap = 2000L * n + 100000L;
    while (got < want) {
      if (++proposals > cap) {
        throw NumericError("spectral sampler: rejection loop stalled");
      }
      const Vec2 x(rng.uniform(0.0, A_), rng.uniform(0.0, B_));
      const double accept_draw = rng.uniform();
      eval_psi(x);
      double resid = psi_norm2;
      if (got > 0) {
        g.head(got).noalias() = basis.topRows(got).conjugate() * psi;
        resid -= g.head(got).squaredNorm();
      }
      if (resid <= 1e-15 * psi_norm2) continue;
      if (accept_draw * psi_norm2 >= resid) continue;
      Eigen::VectorXcd row = psi;
      if (got > 0) {
        row.noalias() -= basis.topRows(got).transpose() * g.head(got);
      }
      basis.row(got) = row.transpose() / std::sqrt(resid);
      out.push_back(x);
      ++got;
    }
    return out;
  }

  double A_, B_;
  std::vector<Vec2> wavevec_;
  std::vector<double> probs_;
};

// Points over the margin-extended window, absolute coordinates.
std::vector<Vec2> sample_extended(const SimConfig& cfg, Rng& rng,
                                  double margin) {
  const Window ext = cfg.window.padded(margin);
  std::vector<Vec2> pts;
  if (cfg.model) {
    const KernelModel& m = *cfg.model;
    if (m.is_poisson()) {
      const int n = rng.poisson(m.intensity() * ext.area());
      pts.reserve(n);
      for (int i = 0; i < n; ++i) {
        pts.emplace_back(rng.uniform(ext.x0, ext.x1),
                         rng.uniform(ext.y0, ext.y1));
      }
      return pts;
    }
    // Samplers are cheap to build relative to one realization but caching
    // by (model, torus) avoids rebuilding across replications.
    static std::map<std::string, std::shared_ptr<SpectralSampler>> cache;
    static std::mutex mu;
    std::shared_ptr<SpectralSampler> sampler;
    {
      const std::string key = m.describe() + "|" + std::to_string(ext.width()) +
                              "x" + std::to_string(ext.height());
      std::lock_guard<std::mutex> lock(mu);
      auto it = cache.find(key);
      if (it == cache.end()) {
        sampler = std::make_shared<SpectralSampler>(m, ext.width(), ext.height());
        cache.emplace(key, sampler);
      } else {
        sampler = it->second;
      }
    }
    std::vector<Vec2> torus = sampler->sample(rng);
    pts.reserve(torus.size());
    for (const Vec2& p : torus) pts.emplace_back(p.x() + ext.x0, p.y() + ext.y0);
    return pts;
  }

  // Perturbed hexagonal grid with a random lattice translation, so the
  // model is stationary and the window centre is not special.
  const HexGridSpec& hex = *cfg.hex;
  const double r = hex.cell_radius;
  const double a = std::sqrt(3.0) * r;  // nearest-neighbor spacing
  const double dy = 1.5 * r;
  const double ox = rng.uniform(0.0, a);
  const double oy = rng.uniform(0.0, 2.0 * dy);
  const long j0 = static_cast<long>(std::floor((ext.y0 - oy - a) / dy));
  const long j1 = static_cast<long>(std::ceil((ext.y1 - oy + a) / dy));
  for (long j = j0; j <= j1; ++j) {
    const double y = oy + j * dy;
    const double shift = (j % 2 == 0) ? 0.0 : 0.5 * a;
    const long i0 = static_cast<long>(std::floor((ext.x0 - ox - shift - a) / a));
    const long i1 = static_cast<long>(std::ceil((ext.x1 - ox - shift + a) / a));
    for (long i = i0; i <= i1; ++i) {
      Vec2 p(ox + shift + i * a, y);
      const double d = hex.eta * r * rng.uniform();
      const double th = rng.uniform(0.0, 2.0 * M_PI);
      p += d * Vec2(std::cos(th), std::sin(th));
      if (ext.contains(p)) pts.push_back(p);
    }
  }
  return pts;
}

PointPattern crop(const std::vector<Vec2>& pts, const Window& w) {
  PointPattern p;
  p.window = w;
  for (const Vec2& x : pts) {
    if (w.contains(x)) p.points.push_back(x);
  }
  return p;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = q * (v.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  const double f = pos - i;
  if (i + 1 >= v.size()) return v.back();
  return v[i] * (1.0 - f) + v[i + 1] * f;
}

Window eroded_window(const Window& w, double by, const char* what) {
  // Minus-sampling border; capped at a quarter of the short side so large
  // radii (where the statistic saturates anyway) stay evaluable.
  const double cap = 0.25 * std::min(w.width(), w.height());
  const double m = std::min(by, cap);
  Window e{w.x0 + m, w.y0 + m, w.x1 - m, w.y1 - m};
  if (!(e.width() > 0.0 && e.height() > 0.0)) {
    throw ConfigError(std::string(what) + ": window too small to erode");
  }
  return e;
}

}  // namespace

double hex_radius_for_intensity(double lambda) {
  if (!(lambda > 0.0)) throw ConfigError("hex radius: lambda must be > 0");
  return std::sqrt(2.0 / (3.0 * std::sqrt(3.0) * lambda));
}

PointPattern sample_pattern(const SimConfig& cfg, int replication) {
  check_config(cfg);
  Rng rng = Rng::for_replication(cfg.rng_seed, replication);
  return crop(sample_extended(cfg, rng, resolve_margin(cfg, false)),
              cfg.window);
}

PointPattern sample_dpp(const SimConfig& cfg, int replication) {
  if (!cfg.model) throw ConfigError("sample_dpp: config has no kernel model");
  return sample_pattern(cfg, replication);
}

PointPattern sample_hex_perturbed(const SimConfig& cfg, int replication) {
  if (!cfg.hex) throw ConfigError("sample_hex_perturbed: config has no grid");
  return sample_pattern(cfg, replication);
}

PointPattern sample_dpp_palm(const SimConfig& cfg, const Vec2& anchor,
                             int replication) {
  check_config(cfg);
  if (!cfg.model || cfg.model->is_poisson()) {
    throw ConfigError("sample_dpp_palm: DPP model required");
  }
  const double margin = resolve_margin(cfg, false);
  const Window ext = cfg.window.padded(margin);
  SpectralSampler sampler(*cfg.model, ext.width(), ext.height());
  Rng rng = Rng::for_replication(cfg.rng_seed, replication);
  const Vec2 shifted(anchor.x() - ext.x0, anchor.y() - ext.y0);
  std::vector<Vec2> torus = sampler.sample_palm(rng, shifted);
  std::vector<Vec2> pts;
  pts.reserve(torus.size());
  for (const Vec2& p : torus) pts.emplace_back(p.x() + ext.x0, p.y() + ext.y0);
  return crop(pts, ext);  // full extended window; caller crops as needed
}

std::vector<double> pattern_coverage_curve(const PointPattern& pattern,
                                           const Vec2& user,
                                           const PathLossModel& pathloss,
                                           const std::vector<double>& tgrid_db) {
  const std::size_t S = tgrid_db.size();
  std::vector<double> curve(S, 1.0);
  if (pattern.empty()) return std::vector<double>(S, 0.0);
  std::vector<double> T(S);
  for (std::size_t s = 0; s < S; ++s) T[s] = std::pow(10.0, tgrid_db[s] / 10.0);
  std::size_t serve = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const double d = (pattern.points[i] - user).norm();
    if (d < best) {
      best = d;
      serve = i;
    }
  }
  const double l0 = pathloss(best);
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (i == serve) continue;
    const double li = pathloss((pattern.points[i] - user).norm());
    const double ratio = li / l0;
    for (std::size_t s = 0; s < S; ++s) curve[s] /= 1.0 + T[s] * ratio;
  }
  return curve;
}

CoverageRun run_coverage(const SimConfig& cfg, const PathLossModel& pathloss,
                         const std::vector<double>& tgrid_db) {
  check_config(cfg);
  if (tgrid_db.empty()) throw ConfigError("run_coverage: empty threshold grid");
  const int R = cfg.replications;
  const std::size_t S = tgrid_db.size();
  std::vector<double> T(S);
  for (std::size_t s = 0; s < S; ++s) T[s] = std::pow(10.0, tgrid_db[s] / 10.0);

  const double margin = resolve_margin(cfg, true);
  const Vec2 user = cfg.window.center();

  CoverageRun run;
  run.tgrid_db = tgrid_db;
  std::vector<std::vector<double>> curves(R);
  std::vector<double> sir(R);

  for (int rep = 0; rep < R; ++rep) {
    Rng rng = Rng::for_replication(cfg.rng_seed, rep);
    std::vector<Vec2> pts;
    for (int attempt = 0;; ++attempt) {
      pts = sample_extended(cfg, rng, margin);
      if (!pts.empty()) break;
      ++run.resampled_empty;
      if (attempt > 100) {
        throw NumericError("run_coverage: persistent empty patterns");
      }
    }
    std::size_t serve = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = (pts[i] - user).norm();
      if (d < best) {
        best = d;
        serve = i;
      }
    }
    const double l0 = pathloss(best);

    // Rayleigh fading integrates out per pattern.
    std::vector<double>& curve = curves[rep];
    curve.assign(S, 1.0);
    double interference = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == serve) continue;
      const double li = pathloss((pts[i] - user).norm());
      const double ratio = li / l0;
      for (std::size_t s = 0; s < S; ++s) curve[s] /= 1.0 + T[s] * ratio;
      interference += rng.exponential() * li;
    }
    const double h0 = rng.exponential();
    sir[rep] = interference > 0.0
                   ? h0 * l0 / interference
                   : std::numeric_limits<double>::infinity();
  }

  run.mean.assign(S, 0.0);
  run.sd.assign(S, 0.0);
  run.env_lo.resize(S);
  run.env_med.resize(S);
  run.env_hi.resize(S);
  run.sampled_ccdf.assign(S, 0.0);
  std::vector<double> col(R);
  for (std::size_t s = 0; s < S; ++s) {
    double sum2 = 0.0;
    for (int rep = 0; rep < R; ++rep) {
      col[rep] = curves[rep][s];
      run.mean[s] += curves[rep][s];
      sum2 += curves[rep][s] * curves[rep][s];
      if (sir[rep] > T[s]) run.sampled_ccdf[s] += 1.0;
    }
    run.mean[s] /= R;
    run.sampled_ccdf[s] /= R;
    run.sd[s] = std::sqrt(std::max(0.0, sum2 / R - run.mean[s] * run.mean[s]));
    run.env_lo[s] = quantile(col, 0.025);
    run.env_med[s] = quantile(col, 0.5);
    run.env_hi[s] = quantile(col, 0.975);
  }
  return run;
}

CurveTable CoverageRun::to_curve(const std::string& metric) const {
  CurveTable c;
  c.meta["metric"] = metric;
  for (std::size_t i = 0; i < tgrid_db.size(); ++i) {
    c.push(tgrid_db[i], mean[i], mean[i], true);
  }
  return c;
}

CurveTable empirical_esf(const std::vector<PointPattern>& patterns,
                         const std::vector<double>& r_grid) {
  if (patterns.empty()) throw ConfigError("empirical_esf: no patterns");
  const double rmax = r_grid.back();
  const int G = 32;
  std::vector<double> counts(r_grid.size(), 0.0);
  long total = 0;
  int skipped = 0;
  for (const PointPattern& p : patterns) {
    if (p.empty()) {
      ++skipped;
      continue;
    }
    const Window e = eroded_window(p.window, rmax, "empirical_esf");
    for (int gx = 0; gx < G; ++gx) {
      for (int gy = 0; gy < G; ++gy) {
        const Vec2 loc(e.x0 + (gx + 0.5) * e.width() / G,
                       e.y0 + (gy + 0.5) * e.height() / G);
        double best = std::numeric_limits<double>::infinity();
        for (const Vec2& q : p.points) {
          best = std::min(best, (q - loc).squaredNorm());
        }
        best = std::sqrt(best);
        for (std::size_t k = 0; k < r_grid.size(); ++k) {
          if (best <= r_grid[k]) counts[k] += 1.0;
        }
        ++total;
      }
    }
  }
  CurveTable c;
  c.meta["metric"] = "esf_empirical";
  c.meta["patterns"] = std::to_string(patterns.size());
  c.meta["skipped_empty"] = std::to_string(skipped);
  for (std::size_t k = 0; k < r_grid.size(); ++k) {
    const double v = total > 0 ? counts[k] / total : 0.0;
    c.push(r_grid[k], v, v, true);
  }
  return c;
}

CurveTable empirical_nn(const std::vector<PointPattern>& patterns,
                        const std::vector<double>& r_grid) {
  if (patterns.empty()) throw ConfigError("empirical_nn: no patterns");
  const double rmax = r_grid.back();
  std::vector<double> counts(r_grid.size(), 0.0);
  long total = 0;
  int skipped = 0;
  for (const PointPattern& p : patterns) {
    if (p.size() < 2) {
      ++skipped;
      continue;
    }
    const Window e = eroded_window(p.window, rmax, "empirical_nn");
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!e.contains(p.points[i])) continue;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (j == i) continue;
        best = std::min(best, (p.points[j] - p.points[i]).squaredNorm());
      }
      best = std::sqrt(best);
      for (std::size_t k = 0; k < r_grid.size(); ++k) {
        if (best <= r_grid[k]) counts[k] += 1.0;
      }
      ++total;
    }
  }
  CurveTable c;
  c.meta["metric"] = "nn_empirical";
  c.meta["patterns"] = std::to_string(patterns.size());
  c.meta["skipped"] = std::to_string(skipped);
  for (std::size_t k = 0; k < r_grid.size(); ++k) {
    const double v = total > 0 ? counts[k] / total : 0.0;
    c.push(r_grid[k], v, v, true);
  }
  return c;
}

CurveTable ripley_k(const std::vector<PointPattern>& patterns,
                    const std::vector<double>& r_grid) {
  if (patterns.empty()) throw ConfigError("ripley_k: no patterns");
  std::vector<double> acc(r_grid.size(), 0.0);
  int used = 0;
  for (const PointPattern& p : patterns) {
    const std::size_t n = p.size();
    if (n < 2) continue;
    const double lx = p.window.width(), ly = p.window.height();
    if (!(r_grid.back() <= 0.5 * std::min(lx, ly))) {
      throw ConfigError("ripley_k: r grid exceeds half the window side");
    }
    const double area = p.window.area();
    const double lam2 = n * (n - 1.0) / (area * area);
    std::vector<double> k_curve(r_grid.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Vec2 d = p.points[i] - p.points[j];
        const double dist = d.norm();
        if (dist > r_grid.back()) continue;
        // translation edge correction
        const double w =
            2.0 / ((lx - std::abs(d.x())) * (ly - std::abs(d.y())));
        for (std::size_t k = 0; k < r_grid.size(); ++k) {
          if (dist <= r_grid[k]) k_curve[k] += w;
        }
      }
    }
    for (std::size_t k = 0; k < r_grid.size(); ++k) {
      acc[k] += k_curve[k] / lam2;
    }
    ++used;
  }
  if (used == 0) throw ConfigError("ripley_k: all patterns below 2 points");
  CurveTable c;
  c.meta["metric"] = "k_empirical";
  c.meta["patterns_used"] = std::to_string(used);
  for (std::size_t k = 0; k < r_grid.size(); ++k) {
    const double v = acc[k] / used;
    c.push(r_grid[k], v, v, true);
  }
  return c;
}

CurveTable ripley_k_analytic(const KernelModel& model,
                             const std::vector<double>& r_grid) {
  CurveTable c;
  c.meta["metric"] = "k_analytic";
  c.meta["model"] = model.describe();
  const double lam = model.intensity();
  for (double r : r_grid) {
    double v = M_PI * r * r;
    if (!model.is_poisson() && r > 0.0) {
      const double corr = integrate_gl(
          [&](double t) {
            const double k = model.covariance_radial(t);
            return t * k * k;
          },
          0.0, std::min(r, model.interaction_range()), 160);
      v -= 2.0 * M_PI * corr / (lam * lam);
    }
    c.push(r, v, v, true);
  }
  return c;
}

namespace {

EnvelopeReport make_report(const std::vector<double>& grid,
                           const std::vector<double>& lo,
                           const std::vector<double>& hi,
                           const std::vector<double>& obs) {
  EnvelopeReport rep;
  rep.grid = grid;
  rep.lo = lo;
  rep.hi = hi;
  rep.observed = obs;
  rep.points = static_cast<int>(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (obs[i] < lo[i] || obs[i] > hi[i]) ++rep.exceed_count;
  }
  rep.exceedance_fraction =
      rep.points > 0 ? static_cast<double>(rep.exceed_count) / rep.points : 0.0;
  rep.pass = rep.exceed_count == 0;
  return rep;
}

}  // namespace

EnvelopeReport envelope_test_k(const PointPattern& observed,
                               const SimConfig& config,
                               const std::vector<double>& r_grid) {
  SimConfig cfg = config;
  cfg.window = observed.window;  // statistics must share the window geometry
  check_config(cfg);
  std::vector<double> lo(r_grid.size(),
                         std::numeric_limits<double>::infinity());
  std::vector<double> hi(r_grid.size(),
                         -std::numeric_limits<double>::infinity());
  for (int rep = 0; rep < cfg.replications; ++rep) {
    const PointPattern p = sample_pattern(cfg, rep);
    if (p.size() < 2) continue;
    const CurveTable k = ripley_k({p}, r_grid);
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      lo[i] = std::min(lo[i], k.value[i]);
      hi[i] = std::max(hi[i], k.value[i]);
    }
  }
  const CurveTable obs = ripley_k({observed}, r_grid);
  return make_report(r_grid, lo, hi, obs.value);
}

EnvelopeReport envelope_test_coverage(const PointPattern& observed,
                                      const SimConfig& config,
                                      const PathLossModel& pathloss,
                                      const std::vector<double>& tgrid_db) {
  SimConfig cfg = config;
  cfg.window = observed.window;
  check_config(cfg);
  const int R = cfg.replications;
  const std::size_t S = tgrid_db.size();
  std::vector<std::vector<double>> curves;
  curves.reserve(R);
  for (int rep = 0; rep < R; ++rep) {
    const PointPattern p = sample_pattern(cfg, rep);
    if (p.empty()) continue;
    curves.push_back(
        pattern_coverage_curve(p, p.window.center(), pathloss, tgrid_db));
  }
  if (curves.empty()) {
    throw NumericError("envelope_test_coverage: no non-empty replications");
  }
  std::vector<double> lo(S), hi(S), col(curves.size());
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t i = 0; i < curves.size(); ++i) col[i] = curves[i][s];
    lo[s] = quantile(col, 0.025);
    hi[s] = quantile(col, 0.975);
  }
  const std::vector<double> obs = pattern_coverage_curve(
      observed, observed.window.center(), pathloss, tgrid_db);
  return make_report(tgrid_db, lo, hi, obs);
}

}  // namespace dppnet
