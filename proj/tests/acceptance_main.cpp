// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Runs at desk scale on a single core.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dppnet/data_io.hpp"
#include "dppnet/kernel.hpp"
#include "dppnet/metrics.hpp"
#include "dppnet/quadrature.hpp"
#include "dppnet/rng.hpp"
#include "dppnet/series.hpp"
#include "dppnet/simulate.hpp"
#include "oracles.hpp"

using namespace dppnet;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int idx, const char* name, bool pass, const std::string& detail,
            double secs) {
  std::printf("[%d] %-38s %s  (%.1fs)  %s\n", idx, name,
              pass ? "PASS" : "FAIL", secs, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::vector<double> grid_range(double a, double b, double step) {
  std::vector<double> g;
  for (double x = a; x <= b + 1e-9; x += step) g.push_back(x);
  return g;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ---- criterion 1: repulsiveness golden values ---------------------------

void criterion_1() {
  Timer t;
  struct Golden { const char* name; double mu; };
  const Golden gold[] = {
      {"houston-gauss", 0.4999},   {"houston-cauchy", 0.4365},
      {"houston-gengamma", 0.5905}, {"la-gauss", 0.5004},
      {"la-cauchy", 0.4351},       {"la-gengamma", 0.5479}};
  double worst = 0.0;
  for (const Golden& g : gold) {
    const double mu = repulsiveness_mu(preset(g.name)).mu;
    worst = std::max(worst, std::abs(mu - g.mu));
  }
  const bool pass = worst <= 1e-3 && t.seconds() < 1.0;
  report(1, "repulsiveness golden values", pass,
         "max |mu - golden| = " + fmt(worst), t.seconds());
}

// ---- criterion 2: PPP reduction suite -----------------------------------

void criterion_2() {
  Timer t;
  const double lambda = 0.4492;
  const KernelModel p = KernelModel::poisson(lambda);
  SeriesOptions opt;
  opt.qmc_points = 1 << 13;
  std::string detail;
  bool pass = true;

  // (a) empty space function vs 1 - exp(-lambda pi r^2)
  {
    const auto rg = grid_range(0.1, 1.6, 0.1);
    const CurveTable esf = empty_space_fn(p, rg, opt);
    double worst = 0.0;
    for (std::size_t i = 0; i < rg.size(); ++i) {
      worst = std::max(worst,
                       std::abs(esf.value[i] - oracles::ppp_esf(lambda, rg[i])));
    }
    pass = pass && worst <= 1e-3;
    detail += "esf " + fmt(worst);
  }
  // (b) Laplace transform vs the exponential form
  {
    const PathLossModel l = PathLossModel::bounded(4.0);
    InterferenceQuery q{p, l, 1.0, 0.5, Association::NearestBS};
    double worst = 0.0;
    for (double s : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const double mass =
          integrate_adaptive(
              [&](double rho) {
                return (1.0 - 1.0 / (1.0 + s * l(rho))) * rho;
              },
              0.5, 80.0, 1e-12) +
          radial_capture_tail(s, 4.0, 80.0);
      const double oracle = std::exp(-lambda * 2.0 * M_PI * mass);
      worst = std::max(worst,
                       std::abs(laplace_interference(q, s, opt) - oracle));
    }
    pass = pass && worst <= 1e-3;
    detail += ", laplace " + fmt(worst);
  }
  // (c) SIR distribution vs the closed form, oracle confirmed by simulation
  {
    const auto tg = grid_range(-10.0, 20.0, 1.0);
    const CurveTable sir = sir_ccdf(p, PathLossModel::pure(4.0), tg, opt);
    double worst = 0.0;
    for (std::size_t i = 0; i < tg.size(); ++i) {
      worst = std::max(worst, std::abs(sir.value[i] -
                                       oracles::ppp_sir_ccdf_b4(
                                           db_to_linear(tg[i]))));
    }
    pass = pass && worst <= 0.02;
    detail += ", sir " + fmt(worst);

    SimConfig cfg;
    cfg.model = p;
    cfg.window = Window::square(16.0);
    cfg.replications = 1000;
    cfg.rng_seed = 20260808;
    const auto tg2 = grid_range(-10.0, 20.0, 5.0);
    const CoverageRun run = run_coverage(cfg, PathLossModel::pure(4.0), tg2);
    double worst_se = 0.0;
    for (std::size_t i = 0; i < tg2.size(); ++i) {
      const double se = std::max(run.sd[i] / std::sqrt(1000.0), 1e-6);
      worst_se = std::max(
          worst_se, std::abs(run.mean[i] - oracles::ppp_sir_ccdf_b4(
                                               db_to_linear(tg2[i]))) /
                        se);
    }
    pass = pass && worst_se <= 3.0;
    detail += ", oracle vs sim " + fmt(worst_se) + " SE";
  }
  report(2, "PPP reduction suite", pass && t.seconds() < 300.0, detail,
         t.seconds());
}

// ---- criterion 3: Palm identity property test ---------------------------

double palm_identity_rel_error(const KernelModel& m, Rng& rng, int n) {
  const double spread = 4.0 * m.alpha();
  const Vec2 anchor(rng.uniform(-spread, spread), rng.uniform(-spread, spread));
  std::vector<Vec2> pts;
  for (int i = 0; i < n; ++i) {
    pts.emplace_back(rng.uniform(-spread, spread), rng.uniform(-spread, spread));
  }
  const PalmKernel palm(m, anchor);
  std::vector<std::vector<long double>> pg(n, std::vector<long double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) pg[i][j] = palm.evaluate(pts[i], pts[j]);
  }
  std::vector<Vec2> all{anchor};
  all.insert(all.end(), pts.begin(), pts.end());
  std::vector<std::vector<long double>> bg(n + 1,
                                           std::vector<long double>(n + 1));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) bg[i][j] = m.covariance(all[i] - all[j]);
  }
  const long double lhs = oracles::cofactor_det(pg);
  const long double rhs = oracles::cofactor_det(bg) / m.intensity();
  const long double scale = std::max(
      {std::abs(static_cast<double>(lhs)), std::abs(static_cast<double>(rhs)),
       1e-300});
  return static_cast<double>(std::abs(lhs - rhs) / scale);
}

void criterion_3() {
  Timer t;
  const KernelModel models[] = {preset("houston-gauss"),
                                preset("houston-cauchy"),
                                preset("houston-gengamma")};
  Rng rng(314159);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform() * 5);
    worst = std::max(worst, palm_identity_rel_error(models[trial % 3], rng,
                                                    std::min(n, 5)));
  }
  report(3, "Palm determinant identity (100 draws)",
         worst <= 1e-10 && t.seconds() < 10.0,
         "max relative error = " + fmt(worst), t.seconds());
}

// ---- criteria 4, 5, 7: gauss-fit cross validation and orderings ---------

struct GaussRuns {
  std::vector<double> tgrid;
  CoverageRun gauss_cov;
  CurveTable sir_exact;
  CurveTable sir_diag;
};

void criterion_4_5(GaussRuns* shared) {
  Timer t;
  const KernelModel m = preset("houston-gauss");
  const std::vector<double> rg = grid_range(0.1, 1.3, 0.1);
  SeriesOptions hi;
  hi.qmc_points = 1 << 15;

  SimConfig cfg;
  cfg.model = m;
  cfg.window = Window::square(16.0);
  cfg.rng_seed = 424242;
  std::vector<PointPattern> pats;
  pats.reserve(1000);
  for (int i = 0; i < 1000; ++i) pats.push_back(sample_pattern(cfg, i));

  const CurveTable esf_emp = empirical_esf(pats, rg);
  const CurveTable esf_ana = empty_space_fn(m, rg, hi);
  const CurveTable nn_emp = empirical_nn(pats, rg);
  const CurveTable nn_ana = nearest_neighbor_fn(m, rg, hi);
  double worst_esf = 0.0, worst_nn = 0.0;
  for (std::size_t i = 0; i < rg.size(); ++i) {
    if (esf_ana.value[i] <= 0.95) {
      worst_esf = std::max(worst_esf,
                           std::abs(esf_emp.value[i] - esf_ana.value[i]));
    }
    if (nn_ana.value[i] <= 0.95) {
      worst_nn = std::max(worst_nn,
                          std::abs(nn_emp.value[i] - nn_ana.value[i]));
    }
  }

  shared->tgrid = grid_range(-10.0, 20.0, 1.0);
  cfg.replications = 2000;
  cfg.margin = 5.0;
  shared->gauss_cov = run_coverage(cfg, PathLossModel::pure(4.0),
                                   shared->tgrid);
  SeriesOptions sopt;
  sopt.qmc_points = 1 << 13;
  shared->sir_exact = sir_ccdf(m, PathLossModel::pure(4.0), shared->tgrid,
                               sopt);
  int outside = 0;
  for (std::size_t i = 0; i < shared->tgrid.size(); ++i) {
    if (shared->sir_exact.value[i] < shared->gauss_cov.env_lo[i] ||
        shared->sir_exact.value[i] > shared->gauss_cov.env_hi[i]) {
      ++outside;
    }
  }
  const bool pass4 =
      worst_esf <= 0.02 && worst_nn <= 0.02 && outside == 0 &&
      t.seconds() < 1800.0;
  report(4, "analytic vs simulation (gauss fit)", pass4,
         "esf " + fmt(worst_esf) + ", nn " + fmt(worst_nn) + ", sir outside " +
             std::to_string(outside) + "/" +
             std::to_string(shared->tgrid.size()),
         t.seconds());

  // Criterion 5 compares the diagonal approximation against its own
  // dedicated high-replication reference: the true gap peaks at ~0.029
  // right at the 6 dB edge of the approximation's validity, so the
  // Monte-Carlo error of the reference must be pushed well under 0.01
  // for the verdict to be stable.
  Timer t5;
  SimConfig cfg5;
  cfg5.model = m;
  cfg5.window = Window::square(16.0);
  cfg5.replications = 5000;
  cfg5.rng_seed = 8086;
  std::vector<double> tg5;
  for (double x = 6.0; x <= 20.0; x += 1.0) tg5.push_back(x);
  const CoverageRun ref5 = run_coverage(cfg5, PathLossModel::pure(4.0), tg5);
  shared->sir_diag = sir_ccdf_diag_approx(m, PathLossModel::pure(4.0),
                                          shared->tgrid, sopt);
  const CurveTable diag5 =
      sir_ccdf_diag_approx(m, PathLossModel::pure(4.0), tg5, sopt);
  double worst5 = 0.0;
  for (std::size_t i = 0; i < tg5.size(); ++i) {
    worst5 = std::max(worst5, std::abs(diag5.value[i] - ref5.mean[i]));
  }
  report(5, "diagonal approximation accuracy", worst5 <= 0.03,
         "max |diag - sim| = " + fmt(worst5) + " for T >= 6 dB",
         t5.seconds());
}

// ---- criterion 6: mean interference consistency -------------------------

double theta_avg_pathloss(const PathLossModel& l, double r0, double t) {
  const auto f = [&](double phi) {
    return l(std::sqrt(r0 * r0 + t * t + 2.0 * r0 * t * std::cos(phi)));
  };
  const double c = (1.0 - r0 * r0 - t * t) / (2.0 * r0 * t);
  std::vector<double> edges{0.0, M_PI};
  if (c > -1.0 && c < 1.0) edges.insert(edges.begin() + 1, std::acos(c));
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    sum += integrate_gl(f, edges[i], edges[i + 1], 96);
  }
  return 2.0 * sum;
}

void criterion_6() {
  Timer t;
  const KernelModel m = preset("houston-gauss");
  bool pass = true;
  std::string detail;

  // closed form vs generic quadrature: the op throws beyond 1e-6 relative
  Rng rng(606060);
  int ok = 0;
  for (int i = 0; i < 10; ++i) {
    InterferenceQuery q{m, PathLossModel::bounded(rng.uniform(2.5, 5.0)), 1.0,
                        rng.uniform(0.05, 2.5), Association::FixedBS};
    try {
      mean_interference_fixed(q);
      ++ok;
    } catch (const std::exception&) {
    }
  }
  pass = pass && ok == 10;
  detail += "closed-vs-quadrature " + std::to_string(ok) + "/10";

  // interference decomposition identity
  {
    const PathLossModel l = PathLossModel::bounded(4.0);
    double worst = 0.0;
    for (double r0 : {0.3, 0.8, 1.6}) {
      InterferenceQuery q{m, l, 1.0, r0, Association::FixedBS};
      const double e_dpp = mean_interference_fixed(q);
      const double e_ppp = m.intensity() * M_PI * 2.0;
      const double corr = integrate_adaptive(
          [&](double u) {
            const double k = m.covariance_radial(u);
            return k * k * u * theta_avg_pathloss(l, r0, u);
          },
          0.0, m.interaction_range(), 1e-12);
      worst = std::max(worst, std::abs(e_dpp + corr / m.intensity() - e_ppp) /
                                  e_ppp);
    }
    pass = pass && worst <= 1e-6;
    detail += ", decomposition " + fmt(worst);
  }

  // -dL/ds at 0 against the lead-coordinate series
  {
    const PathLossModel l = PathLossModel::bounded(4.0);
    SeriesOptions opt;
    opt.qmc_points = 1 << 18;
    Rng rr(98765);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      // serving distances in the well-conditioned bulk of the
      // nearest-BS distance distribution
      const double r0 = rr.uniform(0.3, 0.9);
      InterferenceQuery q{m, l, 1.0, r0, Association::NearestBS};
      const double direct = mean_interference_nearest(q, opt);
      const double h = 1e-4;
      const PalmKernel palm(m, Vec2(r0, 0.0));
      const double rq =
          std::max({2.0 * r0, r0 + 0.25 * m.interaction_range(), 1.0});
      SeriesJob job{KernelOperator(palm),
                    RadialMap::split_at(0.0, r0, rq, 0.5),
                    {},
                    false,
                    {},
                    {},
                    opt.n_max,
                    opt.qmc_points,
                    opt.tail_tol,
                    0};
      const auto w_at = [&](double s) {
        return WeightFn([&l, r0, s](const Vec2& x) {
          const double rho = x.norm();
          if (rho < r0) return 1.0;
          return 1.0 - 1.0 / (1.0 + s * l(rho));
        });
      };
      const auto res =
          eval_determinantal_series_multi(job, {w_at(0.0), w_at(h)});
      const double far_h = std::exp(-m.intensity() * 2.0 * M_PI *
                                    radial_capture_tail(h, 4.0, rq));
      const double fd =
          (res[0].value - res[1].value * far_h) / (h * res[0].value);
      worst = std::max(worst, std::abs(fd - direct) / direct);
    }
    pass = pass && worst <= 1e-3;
    detail += ", dL/ds " + fmt(worst);
  }
  report(6, "mean interference consistency", pass && t.seconds() < 120.0,
         detail, t.seconds());
}

// ---- criterion 7: ordering properties ------------------------------------

void criterion_7(const GaussRuns& shared) {
  Timer t;
  const double lambda = 0.4492;
  std::string detail;
  bool pass = true;

  SimConfig ppp_cfg;
  ppp_cfg.model = KernelModel::poisson(lambda);
  ppp_cfg.window = Window::square(16.0);
  ppp_cfg.replications = 2000;
  ppp_cfg.rng_seed = 777;
  ppp_cfg.margin = 5.0;
  const CoverageRun ppp = run_coverage(ppp_cfg, PathLossModel::pure(4.0),
                                       shared.tgrid);
  SimConfig hex_cfg = ppp_cfg;
  hex_cfg.model.reset();
  hex_cfg.hex = HexGridSpec{0.5, hex_radius_for_intensity(lambda)};
  const CoverageRun hex = run_coverage(hex_cfg, PathLossModel::pure(4.0),
                                       shared.tgrid);
  double worst_low = 0.0, worst_high = 0.0;
  for (std::size_t i = 0; i < shared.tgrid.size(); ++i) {
    worst_low = std::max(worst_low,
                         ppp.mean[i] - shared.gauss_cov.mean[i]);
    worst_high = std::max(worst_high,
                          shared.gauss_cov.mean[i] - hex.mean[i]);
  }
  pass = pass && worst_low <= 0.0 + 1e-12 && worst_high <= 0.02;
  detail += "ppp-gauss " + fmt(worst_low) + ", gauss-hex " + fmt(worst_high);

  // K function strictly below the Poisson parabola
  const KernelModel m = preset("houston-gauss");
  const auto rg = grid_range(0.1, 2.5, 0.1);
  const CurveTable k = ripley_k_analytic(m, rg);
  bool k_ok = true;
  for (std::size_t i = 0; i < rg.size(); ++i) {
    k_ok = k_ok && k.value[i] < M_PI * rg[i] * rg[i];
  }
  pass = pass && k_ok;
  detail += std::string(", K<pi r^2 ") + (k_ok ? "yes" : "NO");

  // nearest-neighbor CDF below the PPP empty space fn
  SeriesOptions opt;
  opt.qmc_points = 1 << 14;
  const auto rg2 = grid_range(0.1, 1.4, 0.1);
  const CurveTable d = nearest_neighbor_fn(m, rg2, opt);
  double worst_d = 0.0;
  for (std::size_t i = 0; i < rg2.size(); ++i) {
    worst_d = std::max(worst_d,
                       d.value[i] - oracles::ppp_esf(lambda, rg2[i]));
  }
  pass = pass && worst_d <= 0.02;
  detail += ", D-F_ppp " + fmt(worst_d);

  report(7, "ordering at matched intensity", pass && t.seconds() < 1200.0,
         detail, t.seconds());
}

// ---- criterion 8: envelope self-consistency ------------------------------

void criterion_8() {
  Timer t;
  const KernelModel m = preset("houston-gauss");
  const auto rg = grid_range(0.2, 2.0, 0.1);
  SimConfig cfg;
  cfg.model = m;
  cfg.window = Window::square(16.0);
  cfg.rng_seed = 88888;

  // Envelope from 1000 replications, shared across the 50 trials (each
  // trial's observed pattern is an independent draw).
  std::vector<double> lo(rg.size(), 1e300), hi(rg.size(), -1e300);
  for (int rep = 0; rep < 1000; ++rep) {
    const PointPattern p = sample_pattern(cfg, rep);
    if (p.size() < 2) continue;
    const CurveTable k = ripley_k({p}, rg);
    for (std::size_t i = 0; i < rg.size(); ++i) {
      lo[i] = std::min(lo[i], k.value[i]);
      hi[i] = std::max(hi[i], k.value[i]);
    }
  }
  int passes = 0;
  SimConfig obs_cfg = cfg;
  obs_cfg.rng_seed = 991;
  for (int trial = 0; trial < 50; ++trial) {
    const PointPattern obs = sample_pattern(obs_cfg, trial);
    if (obs.size() < 2) continue;
    const CurveTable k = ripley_k({obs}, rg);
    bool inside = true;
    for (std::size_t i = 0; i < rg.size(); ++i) {
      inside = inside && k.value[i] >= lo[i] && k.value[i] <= hi[i];
    }
    if (inside) ++passes;
  }
  report(8, "envelope self-consistency", passes >= 40 && t.seconds() < 1800.0,
         std::to_string(passes) + "/50 trials inside the K envelope",
         t.seconds());
}

// ---- criterion 9: CLI determinism ----------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void criterion_9() {
  Timer t;
  const std::string cli = DPPNET_CLI_PATH;
  const std::string args =
      " --qmc 4096 --stamp ACCEPT --seed 5 1>/dev/null 2>/dev/null";
  bool pass = true;
  const auto run_twice = [&](const std::string& sub, const std::string& extra,
                             const std::string& artifact) {
    for (const char* dir : {"/tmp/dppnet_accept_a", "/tmp/dppnet_accept_b"}) {
      const std::string cmd =
          cli + " " + sub + " " + extra + " --out " + dir + args;
      if (std::system(cmd.c_str()) != 0) pass = false;
    }
    const std::string a = slurp(std::string("/tmp/dppnet_accept_a/") + artifact);
    const std::string b = slurp(std::string("/tmp/dppnet_accept_b/") + artifact);
    pass = pass && !a.empty() && a == b;
  };
  run_twice("esf", "--preset houston-gauss --rgrid 0.2:0.2:1.2", "esf.csv");
  run_twice("sir", "--model poisson --lambda 0.4492 --beta 4 --tgrid -10:5:20",
            "sir.csv");
  run_twice("simulate", "--preset houston-gauss --reps 2 --window 8",
            "pattern_0001.csv");
  run_twice("coverage",
            "--model poisson --lambda 0.45 --reps 50 --window 12 --beta 4 "
            "--tgrid 0:5:10",
            "coverage.csv");
  report(9, "CLI determinism", pass, "byte-identical CSV artifacts",
         t.seconds());
}

}  // namespace

int main() {
  Timer total;
  std::printf("acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  GaussRuns shared;
  criterion_4_5(&shared);
  criterion_6();
  criterion_7(shared);
  criterion_8();
  criterion_9();
  std::printf("%s (%d failure%s, %.0fs total)\n",
              g_failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED",
              g_failures, g_failures == 1 ? "" : "s", total.seconds());
  return g_failures == 0 ? 0 : 1;
}
