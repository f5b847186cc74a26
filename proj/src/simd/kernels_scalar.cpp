#include "ergo/simd/kernel_table.hpp"

#include <limits>

namespace ergo::simd::detail {

namespace {

MinMax minmax(const double* x, std::size_t n) {
  MinMax r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < r.min) r.min = x[i];
    if (x[i] > r.max) r.max = x[i];
  }
  return r;
}

void range_mask_or(const double* x, std::size_t n, double lo, double hi, std::uint8_t* mask) {
  for (std::size_t i = 0; i < n; ++i) mask[i] |= static_cast<std::uint8_t>(x[i] >= lo && x[i] <= hi);
}

void mask_and(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] &= src[i];
}

void mask_or(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

std::size_t mask_count(const std::uint8_t* mask, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += mask[i];
  return c;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable t{Isa::scalar, minmax, range_mask_or, mask_and, mask_or, mask_count};
  return t;
}

}  // namespace ergo::simd::detail
