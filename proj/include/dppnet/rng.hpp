#ifndef DPPNET_RNG_HPP
#define DPPNET_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace dppnet {

// Deterministic RNG wrapper. Distribution helpers are hand-rolled so that
// streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Stream for replication `rep` derived from a base seed; disjoint per rep.
  static Rng for_replication(std::uint64_t seed, std::uint64_t rep) {
    // SplitMix64 mix of (seed, rep) to decorrelate consecutive reps.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (rep + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return Rng(z ^ (z >> 31));
  }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1).
  double uniform() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double exponential(double mean = 1.0) {
    return -mean * std::log1p(-uniform());
  }

  // Poisson via inversion for small mean, PTRS-like normal splitting for large.
  int poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) {
      const double l = std::exp(-mean);
      int k = 0;
      double p = uniform();
      while (p > l) {
        p *= uniform();
        ++k;
      }
      return k;
    }
    // Split recursively: Poisson(m) = Poisson(m/2) + Poisson(m/2).
    const int half = poisson(0.5 * mean);
    return half + poisson(mean - 0.5 * mean);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace dppnet

#endif
