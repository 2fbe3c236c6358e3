#ifndef DPPNET_METRICS_HPP
#define DPPNET_METRICS_HPP

#include <vector>

#include "dppnet/curve.hpp"
#include "dppnet/kernel.hpp"
#include "dppnet/pathloss.hpp"
#include "dppnet/series.hpp"

namespace dppnet {

enum class Association { FixedBS, NearestBS };

struct InterferenceQuery {
  KernelModel model;
  PathLossModel pathloss;
  double power = 1.0;  // transmit power multiplier P
  double r0 = 0.0;     // distance to the tagged BS, km
  Association association = Association::FixedBS;
};

// Knobs shared by every series-backed metric.
struct SeriesOptions {
  int qmc_points = 1 << 13;
  int n_max = 20;
  double tail_tol = 1e-4;
  int threads = 0;
  int r0_nodes = 32;  // outer quadrature order for the SIR distribution
};

double db_to_linear(double db);
double linear_to_db(double t);

// --- distance functions -----------------------------------------------

// Empty space function F(r): CDF of the distance from a fixed location to
// the nearest process point, via the truncated determinantal void series.
CurveTable empty_space_fn(const KernelModel& model,
                          const std::vector<double>& r_grid,
                          const SeriesOptions& opt = {});

// Density f(r) = dF/dr, evaluated as 2 pi lambda r times the void
// probability of the reduced Palm process anchored at (r, 0).
double esf_density(const KernelModel& model, double r,
                   const SeriesOptions& opt = {});

// Nearest neighbor function D(r): empty space function of the reduced Palm
// process at the origin.
CurveTable nearest_neighbor_fn(const KernelModel& model,
                               const std::vector<double>& r_grid,
                               const SeriesOptions& opt = {});

// --- interference ------------------------------------------------------

// Mean interference with the tagged BS fixed at (r0, 0). BoundedPower path
// loss only (the integral diverges at the origin otherwise). For the Gauss
// family the Bessel closed form and the generic quadrature are both
// evaluated and must agree to 1e-6 relative.
double mean_interference_fixed(const InterferenceQuery& query);

// Laplace transform E[exp(-s I)] of the interference conditional on the
// nearest BS sitting at distance r0: a ratio of two determinantal series
// over the reduced Palm kernel.
double laplace_interference(const InterferenceQuery& query, double s,
                            const SeriesOptions& opt = {});

// Mean interference conditional on the nearest BS at distance r0; the
// numerator series carries one lead coordinate over the annulus weighted by
// P l(x).
double mean_interference_nearest(const InterferenceQuery& query,
                                 const SeriesOptions& opt = {});

// --- SIR ---------------------------------------------------------------

// P(SIR > T | nearest BS at r0) under Rayleigh fading; PurePower path loss.
double sir_ccdf_conditional(const InterferenceQuery& query, double t_linear,
                            const SeriesOptions& opt = {});

// P(SIR > T) for the typical user, nearest-BS association: outer radial
// integral of the conditional series against the serving-distance density.
// Thresholds are given in dB.
CurveTable sir_ccdf(const KernelModel& model, const PathLossModel& pathloss,
                    const std::vector<double>& tgrid_db,
                    const SeriesOptions& opt = {});

// Diagonal approximation: the Gram determinant is replaced by the product
// of its diagonal, collapsing each series into an exponential of a single
// 2-D integral. Accurate in the high-SIR regime.
CurveTable sir_ccdf_diag_approx(const KernelModel& model,
                                const PathLossModel& pathloss,
                                const std::vector<double>& tgrid_db,
                                const SeriesOptions& opt = {});

// --- shared building blocks (also used by tests and the CLI) ------------

// Void probability of the reduced Palm process at (r0,0) on B(0, r0).
SeriesResult palm_void_series(const KernelModel& model, double r0,
                              const SeriesOptions& opt = {});

// int_{B(0,r0)} K!(x,x) dx by lens-geometry quadrature; exp(-trace) is the
// diagonal-approximation upper bound on the Palm void probability.
double palm_ball_trace(const KernelModel& model, double r0);

// int_R^inf c rho / (c + rho^beta) drho: captured far-field mass of a
// 1/(1 + rho^beta / c) style weight.
double radial_capture_tail(double c, double beta, double R);

}  // namespace dppnet

#endif
