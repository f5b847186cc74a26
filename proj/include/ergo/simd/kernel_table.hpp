#pragma once

// Kept free of hosted-library headers so the per-ISA translation units stay
// minimal.
#include <cstddef>
#include <cstdint>

namespace ergo::simd {

struct MinMax {
  double min;
  double max;
};

enum class Isa : std::uint8_t { scalar, avx2, neon };

/// One implementation of every data-parallel kernel. Masks hold 0 or 1 per
/// byte. Inputs must be finite.
struct KernelTable {
  Isa isa;
  /// n == 0 yields {+inf, -inf}.
  MinMax (*minmax)(const double* x, std::size_t n);
  /// mask[i] |= lo <= x[i] <= hi
  void (*range_mask_or)(const double* x, std::size_t n, double lo, double hi, std::uint8_t* mask);
  void (*mask_and)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
  void (*mask_or)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
  std::size_t (*mask_count)(const std::uint8_t* mask, std::size_t n);
};

namespace detail {
const KernelTable& scalar_table() noexcept;
const KernelTable& avx2_table() noexcept;
const KernelTable& neon_table() noexcept;
}  // namespace detail

}  // namespace ergo::simd
