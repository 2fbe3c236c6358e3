#ifndef DPPNET_SOBOL_HPP
#define DPPNET_SOBOL_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace dppnet {

// Sobol low-discrepancy sequence in [0,1)^d, d <= 64, built from the
// published Joe-Kuo direction numbers with Gray-code updates. The origin
// point (index 0) is skipped: the first point returned is the one at
// sequence index 1. Streams are deterministic and continuable.
class SobolStream {
 public:
  static constexpr int kMaxDimension = 64;
  static constexpr int kBits = 32;

  explicit SobolStream(int dimension);

  int dimension() const { return dim_; }
  // Sequence index of the next point to be produced (starts at 1).
  std::uint64_t index() const { return index_; }

  // Writes the next point into out[0..dim).
  void next(double* out);

  // count x dimension matrix of consecutive points; continues the stream.
  Eigen::MatrixXd next_batch(int count);

  // Repositions the stream so the next point produced is the one at
  // `index` (>= 1). Used to hand disjoint index ranges to parallel workers.
  void seek(std::uint64_t index);

 private:
  int dim_;
  std::uint64_t index_;
  std::vector<std::uint32_t> state_;  // current Gray-code integer per dim
  std::vector<std::uint32_t> dirs_;   // direction numbers, dim * kBits
};

}  // namespace dppnet

#endif
