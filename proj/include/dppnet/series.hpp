#ifndef DPPNET_SERIES_HPP
#define DPPNET_SERIES_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "dppnet/geometry.hpp"
#include "dppnet/kernel.hpp"

namespace dppnet {

using WeightFn = std::function<double(const Vec2&)>;

// One determinantal-series evaluation request,
//   sum_n ((-1)^n / n!) int_{D^n} det(K(x_i,x_j)) prod w(x_i) dx,
// with every order-n integral mapped to the unit hypercube and evaluated on
// a shared Sobol budget. The optional lead coordinate prepends one extra
// integration variable with its own domain and (unbounded, nonnegative)
// weight; the Gram matrix then has size n+1 with the lead point first.
struct SeriesJob {
  KernelOperator kernel;
  RadialMap domain;
  WeightFn weight;  // w : R^2 -> [0,1]; empty means w == 1

  bool has_lead = false;
  RadialMap lead_domain;
  WeightFn lead_weight;

  int n_max = 20;
  int qmc_points = 1 << 13;  // power of two
  double tail_tol = 1e-4;
  int threads = 0;  // 0 = library default
};

struct SeriesResult {
  double value = 0.0;
  int orders_used = 0;
  double tail_bound = 0.0;
  std::vector<double> per_order_terms;  // orders 0..orders_used
  bool converged = true;
  // Hadamard data: C = int_D K(x,x) w(x) dx and the lead-coordinate factor
  // int_L K(x,x) lead_w(x) dx (1 when there is no lead coordinate).
  double weighted_trace = 0.0;
  double lead_factor = 1.0;
  bool hadamard_ok = true;  // every term stayed inside its Hadamard envelope

  std::string to_json() const;
};

struct NonConvergenceError : std::runtime_error {
  explicit NonConvergenceError(SeriesResult r)
      : std::runtime_error("determinantal series: Hadamard tail bound not "
                           "reached by n_max"),
        partial(std::move(r)) {}
  SeriesResult partial;
};

// Throws NonConvergenceError (carrying the partial result) if the tail
// tolerance is unreachable within n_max orders.
SeriesResult eval_determinantal_series(const SeriesJob& job);

// Evaluates the same job under several weight assignments, reusing the
// sampled points and Gram-minor determinants across all of them. Entries in
// `weights` (and `lead_weights`, when the job has a lead coordinate) replace
// the job's own weight functions. Unconverged entries are returned with
// converged = false rather than thrown.
std::vector<SeriesResult> eval_determinantal_series_multi(
    const SeriesJob& job, const std::vector<WeightFn>& weights,
    const std::vector<WeightFn>& lead_weights = {});

// Same, with one callback filling all weight values per point so shared
// sub-expressions (path loss, norms) are computed once per point.
using MultiWeightFn = std::function<void(const Vec2&, double*)>;
std::vector<SeriesResult> eval_determinantal_series_multi(
    const SeriesJob& job, int n_sets, const MultiWeightFn& weight,
    const MultiWeightFn& lead_weight = {});

}  // namespace dppnet

#endif
