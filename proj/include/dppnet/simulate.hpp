#ifndef DPPNET_SIMULATE_HPP
#define DPPNET_SIMULATE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dppnet/curve.hpp"
#include "dppnet/kernel.hpp"
#include "dppnet/pathloss.hpp"
#include "dppnet/pattern.hpp"
#include "dppnet/rng.hpp"

namespace dppnet {

struct HexGridSpec {
  double eta = 0.5;         // perturbation fraction of the cell radius
  double cell_radius = 1.0; // hexagonal cell circumradius, km
};

// Hex cell radius so that the lattice intensity matches lambda
// (area per point = (3 sqrt(3)/2) r^2).
double hex_radius_for_intensity(double lambda);

struct SimConfig {
  std::optional<KernelModel> model;  // DPP family or Poisson pseudo-family
  std::optional<HexGridSpec> hex;    // exclusive with model
  Window window;
  int replications = 1;
  std::uint64_t rng_seed = 1;
  // Torus/crop buffer around the window, km. Negative means automatic:
  // 3 alpha for DPP models (none for Poisson / hex), widened to 20% of the
  // window side for coverage runs so edge truncation of interference stays
  // negligible at the centre.
  double margin = -1.0;
};

// One realization; `replication` selects the RNG stream so replications are
// independent and individually reproducible.
PointPattern sample_pattern(const SimConfig& config, int replication = 0);

// Named entry points. sample_dpp requires a model (DPP family or Poisson),
// sample_hex_perturbed a hex spec.
PointPattern sample_dpp(const SimConfig& config, int replication = 0);
PointPattern sample_hex_perturbed(const SimConfig& config, int replication = 0);

// Realization of the reduced Palm process at `anchor` (a point of the
// process conditioned at anchor, anchor removed), DPP models only. Used as
// the simulation oracle for Palm-conditioned metrics.
PointPattern sample_dpp_palm(const SimConfig& config, const Vec2& anchor,
                             int replication = 0);

// Monte-Carlo SIR engine: typical user at the window centre, nearest-BS
// association, Rayleigh exp(1) fading, zero noise.
struct CoverageRun {
  std::vector<double> tgrid_db;
  // Rayleigh fading integrates in closed form per pattern, so each
  // replication contributes one conditional coverage curve:
  //   P(SIR > T | pattern) = prod_i 1 / (1 + T l(x_i) / l(x0)).
  std::vector<double> mean;              // mean conditional coverage
  std::vector<double> sd;                // std dev across replications
  std::vector<double> env_lo, env_med, env_hi;  // 2.5 / 50 / 97.5 quantiles
  std::vector<double> sampled_ccdf;      // CCDF of one drawn SIR per pattern
  int resampled_empty = 0;

  CurveTable to_curve(const std::string& metric) const;
};

CoverageRun run_coverage(const SimConfig& config, const PathLossModel& pathloss,
                         const std::vector<double>& tgrid_db);

// Conditional coverage curve of one pattern for a user at `user`.
std::vector<double> pattern_coverage_curve(const PointPattern& pattern,
                                           const Vec2& user,
                                           const PathLossModel& pathloss,
                                           const std::vector<double>& tgrid_db);

// Empirical distance statistics averaged over patterns. Test locations
// (ESF) and reference points (NN) are restricted to the window eroded by
// the largest grid radius.
CurveTable empirical_esf(const std::vector<PointPattern>& patterns,
                         const std::vector<double>& r_grid);
CurveTable empirical_nn(const std::vector<PointPattern>& patterns,
                        const std::vector<double>& r_grid);

// Ripley K: translation-edge-corrected estimator averaged over patterns.
CurveTable ripley_k(const std::vector<PointPattern>& patterns,
                    const std::vector<double>& r_grid);

// Analytic K for a stationary DPP: K(r) = pi r^2 - (2 pi/lambda^2)
// int_0^r t K0(t)^2 dt (pi r^2 for Poisson).
CurveTable ripley_k_analytic(const KernelModel& model,
                             const std::vector<double>& r_grid);

struct EnvelopeReport {
  bool pass = false;
  int points = 0;
  int exceed_count = 0;
  double exceedance_fraction = 0.0;
  std::vector<double> grid;
  std::vector<double> lo, hi, observed;
};

// Pointwise min/max envelope of the K function over simulated replications.
EnvelopeReport envelope_test_k(const PointPattern& observed,
                               const SimConfig& config,
                               const std::vector<double>& r_grid);

// 2.5%-97.5% quantile band of conditional coverage curves.
EnvelopeReport envelope_test_coverage(const PointPattern& observed,
                                      const SimConfig& config,
                                      const PathLossModel& pathloss,
                                      const std::vector<double>& tgrid_db);

}  // namespace dppnet

#endif
