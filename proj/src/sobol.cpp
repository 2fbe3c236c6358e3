#include "dppnet/sobol.hpp"

#include <bit>
#include <cstring>

#include "dppnet/errors.hpp"

namespace dppnet {

namespace {

// Joe-Kuo direction-number parameters for dimensions 2..64. Each row holds
// the primitive polynomial over GF(2) (all bits, leading and constant
// included) and the initial values m_1..m_s. Dimension 1 uses m_k = 1.
struct JoeKuoRow {
  std::uint32_t poly;
  std::uint32_t m[9];
};

constexpr JoeKuoRow kJoeKuo[] = {
    {3u, {1}},
    {7u, {1, 3}},
    {11u, {1, 3, 1}},
    {13u, {1, 1, 1}},
    {19u, {1, 1, 3, 3}},
    {25u, {1, 3, 5, 13}},
    {37u, {1, 1, 5, 5, 17}},
    {41u, {1, 1, 5, 5, 5}},
    {47u, {1, 1, 7, 11, 19}},
    {55u, {1, 1, 5, 1, 1}},
    {59u, {1, 1, 1, 3, 11}},
    {61u, {1, 3, 5, 5, 31}},
    {67u, {1, 3, 3, 9, 7, 49}},
    {91u, {1, 1, 1, 15, 21, 21}},
    {97u, {1, 3, 1, 13, 27, 49}},
    {103u, {1, 1, 1, 15, 7, 5}},
    {109u, {1, 3, 1, 15, 13, 25}},
    {115u, {1, 1, 5, 5, 19, 61}},
    {131u, {1, 3, 7, 11, 23, 15, 103}},
    {137u, {1, 3, 7, 13, 13, 15, 69}},
    {143u, {1, 1, 3, 13, 7, 35, 63}},
    {145u, {1, 3, 5, 9, 1, 25, 53}},
    {157u, {1, 3, 1, 13, 9, 35, 107}},
    {167u, {1, 3, 1, 5, 27, 61, 31}},
    {171u, {1, 1, 5, 11, 19, 41, 61}},
    {185u, {1, 3, 5, 3, 3, 13, 69}},
    {191u, {1, 1, 7, 13, 1, 19, 1}},
    {193u, {1, 3, 7, 5, 13, 19, 59}},
    {203u, {1, 1, 3, 9, 25, 29, 41}},
    {211u, {1, 3, 5, 13, 23, 1, 55}},
    {213u, {1, 3, 7, 3, 13, 59, 17}},
    {229u, {1, 3, 1, 3, 5, 53, 69}},
    {239u, {1, 1, 5, 5, 23, 33, 13}},
    {241u, {1, 1, 7, 7, 1, 61, 123}},
    {247u, {1, 1, 7, 9, 13, 61, 49}},
    {253u, {1, 3, 3, 5, 3, 55, 33}},
    {285u, {1, 3, 1, 15, 31, 13, 49, 245}},
    {299u, {1, 3, 5, 15, 31, 59, 63, 97}},
    {301u, {1, 3, 1, 11, 11, 11, 77, 249}},
    {333u, {1, 3, 1, 11, 27, 43, 71, 9}},
    {351u, {1, 1, 7, 15, 21, 11, 81, 45}},
    {355u, {1, 3, 7, 3, 25, 31, 65, 79}},
    {357u, {1, 3, 1, 1, 19, 11, 3, 205}},
    {361u, {1, 1, 5, 9, 19, 21, 29, 157}},
    {369u, {1, 3, 7, 11, 1, 33, 89, 185}},
    {391u, {1, 3, 3, 3, 15, 9, 79, 71}},
    {397u, {1, 3, 7, 11, 15, 39, 119, 27}},
    {425u, {1, 1, 3, 1, 11, 31, 97, 225}},
    {451u, {1, 1, 1, 3, 23, 43, 57, 177}},
    {463u, {1, 3, 7, 7, 17, 17, 37, 71}},
    {487u, {1, 3, 1, 5, 27, 63, 123, 213}},
    {501u, {1, 1, 3, 5, 11, 43, 53, 133}},
    {529u, {1, 3, 5, 5, 29, 17, 47, 173, 479}},
    {539u, {1, 3, 3, 11, 3, 1, 109, 9, 69}},
    {545u, {1, 1, 1, 5, 17, 39, 23, 5, 343}},
    {557u, {1, 3, 1, 5, 25, 15, 31, 103, 499}},
    {563u, {1, 1, 1, 11, 11, 17, 63, 105, 183}},
    {601u, {1, 1, 5, 11, 9, 29, 97, 231, 363}},
    {607u, {1, 1, 5, 15, 19, 45, 41, 7, 383}},
    {617u, {1, 3, 7, 7, 31, 19, 83, 137, 221}},
    {623u, {1, 1, 1, 3, 23, 15, 111, 223, 83}},
    {631u, {1, 1, 5, 13, 31, 15, 55, 25, 161}},
    {637u, {1, 1, 3, 13, 25, 47, 39, 87, 257}},
};

constexpr int kTableRows = static_cast<int>(sizeof(kJoeKuo) / sizeof(kJoeKuo[0]));

}  // namespace

SobolStream::SobolStream(int dimension) : dim_(dimension), index_(1) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw ConfigError("SobolStream: dimension must be in [1, " +
                      std::to_string(kMaxDimension) + "], got " +
                      std::to_string(dimension));
  }
  dirs_.assign(static_cast<std::size_t>(dim_) * kBits, 0u);
  state_.assign(dim_, 0u);

  for (int d = 0; d < dim_; ++d) {
    std::uint32_t* v = dirs_.data() + static_cast<std::size_t>(d) * kBits;
    if (d == 0) {
      for (int k = 0; k < kBits; ++k) v[k] = 1u << (kBits - 1 - k);
      continue;
    }
    const JoeKuoRow& row = kJoeKuo[d - 1];
    const int deg = 31 - std::countl_zero(row.poly);
    for (int k = 0; k < deg; ++k) v[k] = row.m[k] << (kBits - 1 - k);
    for (int k = deg; k < kBits; ++k) {
      std::uint32_t val = v[k - deg] ^ (v[k - deg] >> deg);
      for (int i = 1; i < deg; ++i) {
        if ((row.poly >> (deg - i)) & 1u) val ^= v[k - i];
      }
      v[k] = val;
    }
  }
  (void)kTableRows;
  static_assert(kMaxDimension - 1 <= 63);

  // Advance past the origin point (sequence index 0).
  // Gray-code step from index 0 to 1 flips direction 0.
  for (int d = 0; d < dim_; ++d) {
    state_[d] = dirs_[static_cast<std::size_t>(d) * kBits];
  }
}

void SobolStream::next(double* out) {
  constexpr double kScale = 1.0 / 4294967296.0;  // 2^-32
  for (int d = 0; d < dim_; ++d) out[d] = state_[d] * kScale;
  // Prepare the state for the following index.
  const int c = std::countr_zero(index_ + 1);
  if (c >= kBits) throw NumericError("SobolStream: 32-bit precision exhausted");
  for (int d = 0; d < dim_; ++d) {
    state_[d] ^= dirs_[static_cast<std::size_t>(d) * kBits + c];
  }
  ++index_;
}

Eigen::MatrixXd SobolStream::next_batch(int count) {
  if (count < 1) throw ConfigError("SobolStream::next_batch: count must be >= 1");
  Eigen::MatrixXd pts(count, dim_);
  std::vector<double> buf(dim_);
  for (int i = 0; i < count; ++i) {
    next(buf.data());
    for (int d = 0; d < dim_; ++d) pts(i, d) = buf[d];
  }
  return pts;
}

void SobolStream::seek(std::uint64_t index) {
  if (index < 1) throw ConfigError("SobolStream::seek: index must be >= 1");
  // Direct state: X_n = xor of direction numbers at the set bits of the
  // Gray code g(n) = n ^ (n >> 1).
  const std::uint64_t gray = index ^ (index >> 1);
  if (gray >> kBits) throw NumericError("SobolStream: 32-bit precision exhausted");
  for (int d = 0; d < dim_; ++d) {
    std::uint32_t x = 0;
    const std::uint32_t* v = dirs_.data() + static_cast<std::size_t>(d) * kBits;
    for (int b = 0; b < kBits; ++b) {
      if ((gray >> b) & 1u) x ^= v[b];
    }
    state_[d] = x;
  }
  index_ = index;
}

}  // namespace dppnet
