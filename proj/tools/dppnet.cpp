// Command-line front end: analytic metrics, simulation, and hypothesis
// tests for DPP/PPP/hex-grid cellular deployments, emitting plot-ready
// CSV/JSON plus a run manifest.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dppnet/data_io.hpp"
#include "dppnet/errors.hpp"
#include "dppnet/kernel.hpp"
#include "dppnet/metrics.hpp"
#include "dppnet/parallel.hpp"
#include "dppnet/series.hpp"
#include "dppnet/simulate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dppnet;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string preset_name;
  std::string family;
  double lambda = 0.0, alpha = 0.0, nu = 0.0;
  std::string config_path;
  std::string out_dir = ".";
  std::string stamp;
  int threads = 0;
  std::uint64_t seed = 1;
  int qmc = 1 << 13;
  int nmax = 20;
  double tail_tol = 1e-4;
};

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void add_model_flags(CLI::App* sub, CommonOpts* o) {
  sub->add_option("--preset", o->preset_name,
                  "named fitted model (see `presets`)");
  sub->add_option("--model", o->family, "family: gauss|cauchy|gengamma|poisson");
  sub->add_option("--lambda", o->lambda, "intensity, points per km^2");
  sub->add_option("--alpha", o->alpha, "scale, km");
  sub->add_option("--nu", o->nu, "shape (cauchy, gengamma)");
  sub->add_option("--config", o->config_path, "JSON model config file");
}

void add_common_flags(CLI::App* sub, CommonOpts* o) {
  sub->add_option("--out", o->out_dir, "output directory");
  sub->add_option("--stamp", o->stamp,
                  "timestamp string echoed into JSON outputs (defaults to "
                  "now; fix it to reproduce byte-identical artifacts)");
  sub->add_option("--threads", o->threads, "worker threads (default: cores)");
  sub->add_option("--seed", o->seed, "RNG seed");
  sub->add_option("--qmc", o->qmc, "QMC sample budget (power of two)");
  sub->add_option("--nmax", o->nmax, "series order cap");
  sub->add_option("--tail-tol", o->tail_tol, "series tail tolerance");
}

KernelModel resolve_model(const CommonOpts& o) {
  if (!o.config_path.empty()) {
    std::ifstream f(o.config_path);
    if (!f) throw ConfigError("cannot read config " + o.config_path);
    std::string text((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
    return model_from_json_text(text);
  }
  if (!o.preset_name.empty()) return preset(o.preset_name);
  if (o.family == "gauss") return KernelModel::gauss(o.lambda, o.alpha);
  if (o.family == "cauchy") return KernelModel::cauchy(o.lambda, o.alpha, o.nu);
  if (o.family == "gengamma") {
    return KernelModel::gen_gamma(o.lambda, o.alpha, o.nu);
  }
  if (o.family == "poisson") return KernelModel::poisson(o.lambda);
  throw ConfigError("no model given: use --preset, --model or --config");
}

SeriesOptions series_opts(const CommonOpts& o) {
  SeriesOptions s;
  s.qmc_points = o.qmc;
  s.n_max = o.nmax;
  s.tail_tol = o.tail_tol;
  s.threads = o.threads;
  return s;
}

// "start:step:stop" inclusive
std::vector<double> parse_grid(const std::string& spec) {
  double a = 0, step = 0, b = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &step, &b) != 3 ||
      !(step > 0.0) || b < a) {
    throw ConfigError("bad grid spec '" + spec + "' (want start:step:stop)");
  }
  std::vector<double> g;
  for (double x = a; x <= b + 1e-9 * step; x += step) g.push_back(x);
  return g;
}

struct Manifest {
  std::string subcommand;
  std::vector<std::string> argv;
  json config;
  std::vector<std::string> outputs;

  void write(const CommonOpts& o) const {
    json j;
    j["tool"] = "dppnet";
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    j["argv"] = argv;
    j["stamp"] = o.stamp;
    j["seed"] = o.seed;
    j["config"] = config;
    j["outputs"] = outputs;
    const fs::path path = fs::path(o.out_dir) / ("manifest-" + subcommand + ".json");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << j.dump(2) << "\n";
  }
};

std::string write_curve(const CurveTable& curve, const CommonOpts& o,
                        const std::string& name, Manifest* man) {
  fs::create_directories(o.out_dir);
  CurveTable c = curve;
  c.meta["stamp"] = o.stamp;
  const fs::path csv = fs::path(o.out_dir) / (name + ".csv");
  const fs::path js = fs::path(o.out_dir) / (name + ".json");
  c.write_csv(csv.string());
  c.write_json(js.string());
  man->outputs.push_back(csv.string());
  man->outputs.push_back(js.string());
  return csv.string();
}

int exit_code_for_curve(const CurveTable& c) {
  const auto it = c.meta.find("nonconverged_points");
  if (it != c.meta.end() && it->second != "0") return 3;
  return 0;
}

SimConfig sim_config(const CommonOpts& o, const KernelModel* model,
                     const std::optional<HexGridSpec>& hex, double window_side,
                     double margin, int reps) {
  SimConfig cfg;
  if (hex) {
    cfg.hex = hex;
  } else if (model) {
    cfg.model = *model;
  }
  cfg.window = Window::square(window_side);
  cfg.margin = margin;
  cfg.replications = reps;
  cfg.rng_seed = o.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"determinantal point process toolkit for cellular networks"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string rgrid_spec = "0.05:0.05:2.0";
  std::string tgrid_spec = "-10:1:20";
  std::string sgrid_spec = "0.1:0.1:2.0";
  double beta = 4.0;
  std::string pathloss_kind = "pure";
  double r0 = 0.5;
  std::string association = "nearest";
  double power = 1.0;
  int reps = 1000;
  double window_side = 16.0;
  double margin = -1.0;
  bool hex_flag = false;
  double eta = 0.5;
  double cell_radius = 0.0;
  bool empirical = false;
  std::string observed_path;
  std::string statistic = "k";

  auto* c_esf = app.add_subcommand("esf", "empty space function F(r)");
  auto* c_nnf = app.add_subcommand("nnf", "nearest neighbor function D(r)");
  auto* c_kfn = app.add_subcommand("kfn", "Ripley K function");
  auto* c_mi = app.add_subcommand("mean-interference",
                                  "mean interference at the typical user");
  auto* c_lap = app.add_subcommand("laplace",
                                   "Laplace transform of the interference");
  auto* c_sir = app.add_subcommand("sir", "SIR distribution P(SIR > T)");
  auto* c_sira = app.add_subcommand("sir-approx",
                                    "diagonal-approximation SIR distribution");
  auto* c_sim = app.add_subcommand("simulate", "sample point patterns to CSV");
  auto* c_cov = app.add_subcommand("coverage", "Monte-Carlo coverage curves");
  auto* c_env = app.add_subcommand("envelope-test",
                                   "goodness-of-fit envelope test");
  auto* c_mu = app.add_subcommand("mu", "repulsiveness measure");
  auto* c_pre = app.add_subcommand("presets", "list built-in fitted models");
  auto* c_chk = app.add_subcommand("check-existence",
                                   "existence condition for kernel parameters");

  for (CLI::App* sub : {c_esf, c_nnf, c_kfn, c_mi, c_lap, c_sir, c_sira,
                        c_sim, c_cov, c_env, c_mu, c_chk}) {
    add_model_flags(sub, &o);
    add_common_flags(sub, &o);
  }
  for (CLI::App* sub : {c_esf, c_nnf, c_kfn, c_env}) {
    sub->add_option("--rgrid", rgrid_spec, "r grid, km (start:step:stop)");
  }
  for (CLI::App* sub : {c_sir, c_sira, c_cov, c_env}) {
    sub->add_option("--tgrid", tgrid_spec, "threshold grid, dB");
  }
  for (CLI::App* sub : {c_mi, c_lap, c_sir, c_sira, c_cov, c_env}) {
    sub->add_option("--beta", beta, "path loss exponent (> 2)");
    sub->add_option("--pathloss", pathloss_kind, "bounded | pure");
  }
  for (CLI::App* sub : {c_mi, c_lap}) {
    sub->add_option("--r0", r0, "distance to the tagged BS, km");
    sub->add_option("--power", power, "transmit power multiplier");
  }
  c_mi->add_option("--association", association, "fixed | nearest");
  c_lap->add_option("--sgrid", sgrid_spec, "Laplace argument grid");
  for (CLI::App* sub : {c_sim, c_cov, c_env}) {
    sub->add_option("--reps", reps, "replications");
    sub->add_option("--window", window_side, "square window side, km");
    sub->add_option("--margin", margin, "torus/crop buffer, km (-1: auto)");
    sub->add_flag("--hex", hex_flag, "perturbed hexagonal grid model");
    sub->add_option("--eta", eta, "hex perturbation fraction");
    sub->add_option("--cell-radius", cell_radius,
                    "hex cell radius, km (default: match --lambda)");
  }
  c_kfn->add_flag("--empirical", empirical, "also estimate K from simulations");
  c_kfn->add_option("--reps", reps, "replications for --empirical");
  c_kfn->add_option("--window", window_side, "window for --empirical");
  c_env->add_option("--observed", observed_path, "observed pattern CSV")
      ->required();
  c_env->add_option("--statistic", statistic, "k | coverage");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help/usage text
    return code == 0 ? 0 : 2;
  }

  if (o.stamp.empty()) o.stamp = utc_now();
  if (o.threads > 0) set_default_threads(o.threads);

  Manifest man;
  for (int i = 0; i < argc; ++i) man.argv.push_back(argv[i]);

  const auto hex_spec = [&](double target_lambda) -> HexGridSpec {
    const double r =
        cell_radius > 0.0 ? cell_radius : hex_radius_for_intensity(target_lambda);
    return HexGridSpec{eta, r};
  };

  try {
    const SeriesOptions sopt = series_opts(o);
    int code = 0;

    if (*c_esf || *c_nnf) {
      const KernelModel m = resolve_model(o);
      const auto grid = parse_grid(rgrid_spec);
      const CurveTable c = *c_esf ? empty_space_fn(m, grid, sopt)
                                  : nearest_neighbor_fn(m, grid, sopt);
      man.subcommand = *c_esf ? "esf" : "nnf";
      man.config = {{"model", m.describe()}, {"rgrid", rgrid_spec},
                    {"qmc", o.qmc}};
      const std::string path = write_curve(c, o, man.subcommand, &man);
      man.write(o);
      std::cout << path << "\n";
      code = exit_code_for_curve(c);
    } else if (*c_kfn) {
      const KernelModel m = resolve_model(o);
      const auto grid = parse_grid(rgrid_spec);
      man.subcommand = "kfn";
      man.config = {{"model", m.describe()}, {"rgrid", rgrid_spec}};
      const CurveTable c = ripley_k_analytic(m, grid);
      std::cout << write_curve(c, o, "kfn", &man) << "\n";
      if (empirical) {
        SimConfig cfg = sim_config(o, &m, std::nullopt, window_side, margin,
                                   reps);
        std::vector<PointPattern> pats;
        pats.reserve(reps);
        for (int i = 0; i < reps; ++i) pats.push_back(sample_pattern(cfg, i));
        std::cout << write_curve(ripley_k(pats, grid), o, "kfn_empirical",
                                 &man)
                  << "\n";
      }
      man.write(o);
    } else if (*c_mi) {
      const KernelModel m = resolve_model(o);
      const PathLossModel l = pathloss_kind == "bounded"
                                  ? PathLossModel::bounded(beta)
                                  : PathLossModel::pure(beta);
      InterferenceQuery q{m, l, power, r0,
                          association == "fixed" ? Association::FixedBS
                                                 : Association::NearestBS};
      const double v = association == "fixed"
                           ? mean_interference_fixed(q)
                           : mean_interference_nearest(q, sopt);
      man.subcommand = "mean-interference";
      man.config = {{"model", m.describe()}, {"r0", r0}, {"beta", beta},
                    {"association", association}, {"pathloss", pathloss_kind}};
      man.write(o);
      std::printf("%.6f\n", v);
    } else if (*c_lap) {
      const KernelModel m = resolve_model(o);
      const PathLossModel l = pathloss_kind == "bounded"
                                  ? PathLossModel::bounded(beta)
                                  : PathLossModel::pure(beta);
      InterferenceQuery q{m, l, power, r0, Association::NearestBS};
      CurveTable c;
      c.meta["metric"] = "laplace_interference";
      c.meta["model"] = m.describe();
      c.meta["r0"] = std::to_string(r0);
      int nonconverged = 0;
      for (double s : parse_grid(sgrid_spec)) {
        try {
          const double v = laplace_interference(q, s, sopt);
          c.push(s, v, v, true);
        } catch (const NonConvergenceError& e) {
          // keep the flagged partial value and finish the grid
          c.push(s, std::clamp(e.partial.value, 0.0, 1.0), e.partial.value,
                 false);
          ++nonconverged;
        }
      }
      c.meta["nonconverged_points"] = std::to_string(nonconverged);
      // conditional-series diagnostics: the Palm void denominator at r0
      c.meta["void_series"] = palm_void_series(m, r0, sopt).to_json();
      man.subcommand = "laplace";
      man.config = {{"model", m.describe()}, {"r0", r0}, {"beta", beta},
                    {"sgrid", sgrid_spec}};
      std::cout << write_curve(c, o, "laplace", &man) << "\n";
      man.write(o);
      code = nonconverged > 0 ? 3 : 0;
    } else if (*c_sir || *c_sira) {
      const KernelModel m = resolve_model(o);
      const PathLossModel l = PathLossModel::pure(beta);
      const auto grid = parse_grid(tgrid_spec);
      const CurveTable c = *c_sir ? sir_ccdf(m, l, grid, sopt)
                                  : sir_ccdf_diag_approx(m, l, grid, sopt);
      man.subcommand = *c_sir ? "sir" : "sir-approx";
      man.config = {{"model", m.describe()}, {"beta", beta},
                    {"tgrid", tgrid_spec}, {"qmc", o.qmc}};
      std::cout << write_curve(c, o, *c_sir ? "sir" : "sir_approx", &man)
                << "\n";
      man.write(o);
    } else if (*c_sim) {
      std::optional<KernelModel> m;
      std::optional<HexGridSpec> hx;
      if (hex_flag) {
        hx = hex_spec(o.lambda > 0 ? o.lambda : 0.4492);
      } else {
        m = resolve_model(o);
      }
      SimConfig cfg = sim_config(o, m ? &*m : nullptr, hx, window_side,
                                 margin, reps);
      fs::create_directories(o.out_dir);
      man.subcommand = "simulate";
      for (int i = 0; i < reps; ++i) {
        const PointPattern p = sample_pattern(cfg, i);
        char name[64];
        std::snprintf(name, sizeof(name), "pattern_%04d.csv", i);
        const fs::path path = fs::path(o.out_dir) / name;
        save_pattern(p, path.string());
        man.outputs.push_back(path.string());
      }
      man.config = {{"model", m ? m->describe() : "hex"},
                    {"window", window_side}, {"reps", reps},
                    {"margin", margin}, {"eta", eta}};
      man.write(o);
      std::cout << man.outputs.size() << " patterns written to " << o.out_dir
                << "\n";
    } else if (*c_cov) {
      std::optional<KernelModel> m;
      std::optional<HexGridSpec> hx;
      if (hex_flag) {
        hx = hex_spec(o.lambda > 0 ? o.lambda : 0.4492);
      } else {
        m = resolve_model(o);
      }
      SimConfig cfg = sim_config(o, m ? &*m : nullptr, hx, window_side,
                                 margin, reps);
      const PathLossModel l = pathloss_kind == "bounded"
                                  ? PathLossModel::bounded(beta)
                                  : PathLossModel::pure(beta);
      const CoverageRun run = run_coverage(cfg, l, parse_grid(tgrid_spec));
      CurveTable c;
      c.meta["metric"] = "coverage";
      c.meta["model"] = m ? m->describe() : "hex";
      c.meta["replications"] = std::to_string(reps);
      c.meta["resampled_empty"] = std::to_string(run.resampled_empty);
      for (std::size_t i = 0; i < run.tgrid_db.size(); ++i) {
        c.push(run.tgrid_db[i], run.mean[i], run.mean[i], true);
      }
      man.subcommand = "coverage";
      man.config = {{"tgrid", tgrid_spec}, {"beta", beta}, {"reps", reps},
                    {"window", window_side}};
      const std::string path = write_curve(c, o, "coverage", &man);
      // envelope columns as a side table
      CurveTable env;
      env.meta["metric"] = "coverage_envelope";
      for (std::size_t i = 0; i < run.tgrid_db.size(); ++i) {
        env.push(run.tgrid_db[i], run.env_med[i], run.env_lo[i], true);
        env.raw.back() = run.env_lo[i];
      }
      env.meta["note"] = "value = median, raw_value = 2.5% quantile";
      write_curve(env, o, "coverage_envelope", &man);
      man.write(o);
      std::cout << path << "\n";
    } else if (*c_env) {
      const Dataset obs = load_pattern(observed_path);
      std::optional<KernelModel> m;
      std::optional<HexGridSpec> hx;
      if (hex_flag) {
        hx = hex_spec(o.lambda > 0 ? o.lambda : obs.pattern.intensity());
      } else {
        m = resolve_model(o);
      }
      SimConfig cfg = sim_config(o, m ? &*m : nullptr, hx,
                                 obs.pattern.window.width(), margin, reps);
      EnvelopeReport rep;
      if (statistic == "k") {
        rep = envelope_test_k(obs.pattern, cfg, parse_grid(rgrid_spec));
      } else if (statistic == "coverage") {
        rep = envelope_test_coverage(obs.pattern, cfg,
                                     PathLossModel::pure(beta),
                                     parse_grid(tgrid_spec));
      } else {
        throw ConfigError("statistic must be k or coverage");
      }
      json j;
      j["pass"] = rep.pass;
      j["points"] = rep.points;
      j["exceed_count"] = rep.exceed_count;
      j["exceedance_fraction"] = rep.exceedance_fraction;
      j["grid"] = rep.grid;
      j["lo"] = rep.lo;
      j["hi"] = rep.hi;
      j["observed"] = rep.observed;
      fs::create_directories(o.out_dir);
      const fs::path path = fs::path(o.out_dir) / "envelope.json";
      std::ofstream f(path);
      f << j.dump(2) << "\n";
      man.subcommand = "envelope-test";
      man.config = {{"observed", observed_path}, {"statistic", statistic},
                    {"reps", reps}};
      man.outputs.push_back(path.string());
      man.write(o);
      std::cout << (rep.pass ? "pass" : "fail") << " (exceedance "
                << rep.exceedance_fraction << ")\n";
    } else if (*c_mu) {
      const RepulsivenessReport rep = repulsiveness_mu(resolve_model(o));
      std::printf("%.4f\n", rep.mu);
    } else if (*c_pre) {
      for (const auto& name : preset_names()) {
        const KernelModel m = preset(name);
        const RepulsivenessReport rep = repulsiveness_mu(m);
        std::printf("%-18s %-40s mu=%.4f\n", name.c_str(),
                    m.describe().c_str(), rep.mu);
      }
    } else if (*c_chk) {
      Family fam = Family::Gauss;
      if (!o.preset_name.empty() || !o.config_path.empty()) {
        const KernelModel m = resolve_model(o);
        const ExistenceReport rep = existence_check(m);
        std::cout << (rep.pass ? "pass" : "violation") << ": " << rep.message
                  << "\n";
        return 0;
      }
      if (o.family == "gauss") fam = Family::Gauss;
      else if (o.family == "cauchy") fam = Family::Cauchy;
      else if (o.family == "gengamma") fam = Family::GenGamma;
      else if (o.family == "poisson") fam = Family::Poisson;
      else throw ConfigError("check-existence: --model required");
      const ExistenceReport rep = existence_check(fam, o.lambda, o.alpha, o.nu);
      std::cout << (rep.pass ? "pass" : "violation") << ": " << rep.message
                << "\n";
    }
    return code;
  } catch (const NonConvergenceError& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
