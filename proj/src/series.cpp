#include "dppnet/series.hpp"

#include <Eigen/Core>
#include <cmath>
#include <sstream>

#include "dppnet/errors.hpp"
#include "dppnet/parallel.hpp"
#include "dppnet/sobol.hpp"

namespace dppnet {

namespace {

constexpr int kBlockSize = 2048;

// Remainder of the exponential series: sum_{m > n} c^m / m!.
double exp_tail(double c, int n) {
  double term = 1.0;
  for (int m = 1; m <= n; ++m) term *= c / m;
  double tail = 0.0;
  for (int m = n + 1; m < n + 600; ++m) {
    term *= c / m;
    tail += term;
    if (term < 1e-18 * (tail + 1.0)) break;
  }
  return tail;
}

struct BlockAccum {
  // order_sums[s * (np + 1) + n]: per-set, per-order contributions
  std::vector<double> order_sums;
  std::vector<double> trace;       // per set: sum of diag * w * jac over slots
  std::vector<double> lead_trace;  // per set: sum of diag * lead_w * lead_jac
};

struct JobShape {
  int np = 0;    // ball integration points per sample
  int lead = 0;  // 0 or 1
  int gram = 0;  // np + lead
  int dims = 0;  // 2 * gram
  int n_blocks = 0;
};

void validate(const SeriesJob& job, int n_sets, JobShape* shape) {
  if (job.n_max < 0) throw ConfigError("series: n_max must be >= 0");
  const int q = job.qmc_points;
  if (q < 1 || (q & (q - 1)) != 0) {
    throw ConfigError("series: qmc_points must be a power of two");
  }
  if (!(job.domain.outer > job.domain.inner) && job.n_max > 0) {
    throw ConfigError("series: empty integration domain");
  }
  if (n_sets < 1) throw ConfigError("series: no weight sets");
  shape->np = job.n_max;
  shape->lead = job.has_lead ? 1 : 0;
  shape->gram = shape->np + shape->lead;
  shape->dims = std::max(2, 2 * shape->gram);
  if (shape->dims > SobolStream::kMaxDimension) {
    throw ConfigError("series: n_max needs more QMC dimensions than available");
  }
  shape->n_blocks = (q + kBlockSize - 1) / kBlockSize;
}

}  // namespace

std::string SeriesResult::to_json() const {
  std::ostringstream os;
  os.precision(12);
  os << "{\"value\":" << value << ",\"orders_used\":" << orders_used
     << ",\"tail_bound\":" << tail_bound << ",\"converged\":"
     << (converged ? "true" : "false") << ",\"weighted_trace\":"
     << weighted_trace << ",\"lead_factor\":" << lead_factor
     << ",\"hadamard_ok\":" << (hadamard_ok ? "true" : "false")
     << ",\"per_order_terms\":[";
  for (std::size_t i = 0; i < per_order_terms.size(); ++i) {
    if (i) os << ",";
    os << per_order_terms[i];
  }
  os << "]}";
  return os.str();
}

std::vector<SeriesResult> eval_determinantal_series_multi(
    const SeriesJob& job, int n_sets, const MultiWeightFn& weight,
    const MultiWeightFn& lead_weight) {
  JobShape shape;
  validate(job, n_sets, &shape);
  const int np = shape.np, lead = shape.lead, gram = shape.gram;
  const int S = n_sets;
  const double n_samples = static_cast<double>(job.qmc_points);
  const bool poisson = job.kernel.poisson_rule();
  const double lambda = job.kernel.intensity();

  std::vector<BlockAccum> blocks(shape.n_blocks);

  parallel_for(
      shape.n_blocks,
      [&](int b) {
        BlockAccum& acc = blocks[b];
        acc.order_sums.assign(static_cast<std::size_t>(S) * (np + 1), 0.0);
        acc.trace.assign(S, 0.0);
        acc.lead_trace.assign(S, 0.0);

        SobolStream stream(shape.dims);
        stream.seek(1 + static_cast<std::uint64_t>(b) * kBlockSize);
        const int lo = b * kBlockSize;
        const int hi = std::min(job.qmc_points, lo + kBlockSize);

        std::vector<double> u(shape.dims);
        std::vector<Vec2> pts(gram);
        std::vector<double> jac(gram), diag(gram), dets(gram + 1);
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
            chol(std::max(gram, 1), std::max(gram, 1));
        std::vector<double> w(static_cast<std::size_t>(S) * std::max(np, 1));
        std::vector<double> lw(S, 1.0);
        std::vector<double> wprod(S);

        for (int s_idx = lo; s_idx < hi; ++s_idx) {
          stream.next(u.data());
          if (lead) pts[0] = job.lead_domain.map(u[0], u[1], &jac[0]);
          for (int j = 0; j < np; ++j) {
            pts[lead + j] = job.domain.map(u[2 * (lead + j)],
                                           u[2 * (lead + j) + 1],
                                           &jac[lead + j]);
          }
          for (int j = 0; j < np; ++j) {
            weight(pts[lead + j], w.data() + static_cast<std::size_t>(j) * S);
          }
          if (lead) lead_weight(pts[0], lw.data());

          if (poisson) {
            for (int s = 0; s < S; ++s) {
              double tw = 0.0;
              for (int j = 0; j < np; ++j) {
                tw += w[static_cast<std::size_t>(j) * S + s] * jac[lead + j];
              }
              acc.trace[s] += lambda * tw;
              if (lead) acc.lead_trace[s] += lambda * lw[s] * jac[0];
            }
            continue;
          }

          for (int k = 0; k < gram; ++k) diag[k] = job.kernel.diag(pts[k]);

          // Leading-minor determinants via one unpivoted Cholesky sweep.
          // Once a pivot collapses the Gram is singular and every larger
          // minor is zero as well.
          dets[0] = 1.0;
          int singular_from = gram + 1;
          for (int k = 0; k < gram; ++k) {
            if (k >= singular_from) {
              dets[k + 1] = 0.0;
              continue;
            }
            double d = diag[k];
            for (int j = 0; j < k; ++j) {
              double s = job.kernel.eval(pts[k], pts[j]);
              for (int i = 0; i < j; ++i) s -= chol(k, i) * chol(j, i);
              chol(k, j) = s / chol(j, j);
              d -= chol(k, j) * chol(k, j);
            }
            if (!(d > 1e-14 * diag[k])) {
              singular_from = k;
              dets[k + 1] = 0.0;
              continue;
            }
            chol(k, k) = std::sqrt(d);
            dets[k + 1] = dets[k] * d;
          }

          for (int s = 0; s < S; ++s) {
            wprod[s] = lead ? lw[s] * jac[0] : 1.0;
            acc.order_sums[static_cast<std::size_t>(s) * (np + 1)] +=
                dets[lead] * wprod[s];
            if (lead) acc.lead_trace[s] += diag[0] * lw[s] * jac[0];
          }
          for (int n = 1; n <= np; ++n) {
            const double det_n = dets[n + lead];
            const double dg = diag[lead + n - 1];
            const double ja = jac[lead + n - 1];
            for (int s = 0; s < S; ++s) {
              const double wv =
                  w[static_cast<std::size_t>(n - 1) * S + s] * ja;
              acc.trace[s] += dg * wv;
              wprod[s] *= wv;
              if (det_n != 0.0) {
                acc.order_sums[static_cast<std::size_t>(s) * (np + 1) + n] +=
                    det_n * wprod[s];
              }
            }
          }
        }
      },
      job.threads);

  // Deterministic reduction in block order.
  std::vector<double> order_sums(static_cast<std::size_t>(S) * (np + 1), 0.0);
  std::vector<double> trace(S, 0.0), lead_trace(S, 0.0);
  for (const BlockAccum& acc : blocks) {
    for (std::size_t i = 0; i < order_sums.size(); ++i) {
      order_sums[i] += acc.order_sums[i];
    }
    for (int s = 0; s < S; ++s) {
      trace[s] += acc.trace[s];
      lead_trace[s] += acc.lead_trace[s];
    }
  }

  std::vector<SeriesResult> out(S);
  for (int s = 0; s < S; ++s) {
    SeriesResult& r = out[s];
    const double c_int = np > 0 ? trace[s] / (n_samples * np) : 0.0;
    const double lead_factor = lead ? lead_trace[s] / n_samples : 1.0;
    // Integrability requirement on int K(x,x) w(x) dx, checked numerically
    // on the truncated domain. This is a finite-sample spot check, not a
    // proof of the full-plane condition; callers arrange the truncation so
    // the omitted tail is controlled.
    if (!std::isfinite(c_int) || !std::isfinite(lead_factor)) {
      throw NumericError("series: weighted kernel trace is not finite");
    }
    r.weighted_trace = c_int;
    r.lead_factor = lead_factor;

    // Truncation order from the Hadamard envelope |term_n| <= Lf C^n / n!.
    int n_use = job.n_max;
    r.converged = false;
    for (int n = 0; n <= job.n_max; ++n) {
      const double tail = std::abs(lead_factor) * exp_tail(c_int, n);
      if (tail <= job.tail_tol) {
        n_use = n;
        r.tail_bound = tail;
        r.converged = true;
        break;
      }
    }
    if (!r.converged) {
      r.tail_bound = std::abs(lead_factor) * exp_tail(c_int, job.n_max);
    }
    r.orders_used = n_use;

    if (poisson) {
      // Degenerate determinant rule det = lambda^n: the series collapses to
      // lead_factor * exp(-C) with C = lambda int w, summed in closed form,
      // so truncation never fails regardless of the Hadamard order count.
      r.value = (lead ? lead_factor : 1.0) * std::exp(-c_int);
      r.converged = true;
      r.tail_bound = 0.0;
      double env = lead ? lead_factor : 1.0;
      r.per_order_terms.assign(n_use + 1, 0.0);
      for (int n = 0; n <= n_use; ++n) {
        r.per_order_terms[n] = env;
        env *= -c_int / (n + 1);
      }
      continue;
    }

    r.per_order_terms.assign(n_use + 1, 0.0);
    double envelope = std::abs(lead_factor);
    double value = 0.0;
    double inv_fact = 1.0;
    double sign = 1.0;
    for (int n = 0; n <= n_use; ++n) {
      const double mean =
          order_sums[static_cast<std::size_t>(s) * (np + 1) + n] / n_samples;
      const double term = sign * inv_fact * mean;
      r.per_order_terms[n] = term;
      value += term;
      if (std::abs(term) > 1.3 * envelope + 1e-12) r.hadamard_ok = false;
      inv_fact /= (n + 1);
      sign = -sign;
      envelope *= c_int / (n + 1);
    }
    r.value = value;
  }
  return out;
}

std::vector<SeriesResult> eval_determinantal_series_multi(
    const SeriesJob& job, const std::vector<WeightFn>& weights,
    const std::vector<WeightFn>& lead_weights) {
  const int S = static_cast<int>(weights.size());
  if (job.has_lead && static_cast<int>(lead_weights.size()) != S) {
    throw ConfigError("series: lead_weights size must match weights");
  }
  MultiWeightFn w = [&](const Vec2& x, double* out) {
    for (int s = 0; s < S; ++s) out[s] = weights[s] ? weights[s](x) : 1.0;
  };
  MultiWeightFn lw;
  if (job.has_lead) {
    lw = [&](const Vec2& x, double* out) {
      for (int s = 0; s < S; ++s) {
        out[s] = lead_weights[s] ? lead_weights[s](x) : 1.0;
      }
    };
  }
  return eval_determinantal_series_multi(job, S, w, lw);
}

SeriesResult eval_determinantal_series(const SeriesJob& job) {
  std::vector<WeightFn> ws{job.weight};
  std::vector<WeightFn> lws;
  if (job.has_lead) lws.push_back(job.lead_weight);
  SeriesResult r = eval_determinantal_series_multi(job, ws, lws)[0];
  if (!r.converged) throw NonConvergenceError(std::move(r));
  return r;
}

}  // namespace dppnet
