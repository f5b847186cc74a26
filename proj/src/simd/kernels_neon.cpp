// AArch64 only; Advanced SIMD is part of the baseline there.
#include "ergo/simd/kernel_table.hpp"

#include <arm_neon.h>

namespace ergo::simd::detail {

namespace {

MinMax minmax(const double* x, std::size_t n) {
  const double inf = __builtin_inf();
  float64x2_t vmin = vdupq_n_f64(inf);
  float64x2_t vmax = vdupq_n_f64(-inf);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t a = vld1q_f64(x + i);
    const float64x2_t b = vld1q_f64(x + i + 2);
    vmin = vminq_f64(vmin, vminq_f64(a, b));
    vmax = vmaxq_f64(vmax, vmaxq_f64(a, b));
  }
  MinMax r{vminvq_f64(vmin), vmaxvq_f64(vmax)};
  for (; i < n; ++i) {
    if (x[i] < r.min) r.min = x[i];
    if (x[i] > r.max) r.max = x[i];
  }
  return r;
}

void range_mask_or(const double* x, std::size_t n, double lo, double hi, std::uint8_t* mask) {
  const float64x2_t vlo = vdupq_n_f64(lo);
  const float64x2_t vhi = vdupq_n_f64(hi);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(x + i);
    const uint64x2_t in = vandq_u64(vcgeq_f64(v, vlo), vcleq_f64(v, vhi));
    mask[i] |= static_cast<std::uint8_t>(vgetq_lane_u64(in, 0) & 1u);
    mask[i + 1] |= static_cast<std::uint8_t>(vgetq_lane_u64(in, 1) & 1u);
  }
  for (; i < n; ++i) mask[i] |= static_cast<std::uint8_t>(x[i] >= lo && x[i] <= hi);
}

void mask_and(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) vst1q_u8(dst + i, vandq_u8(vld1q_u8(dst + i), vld1q_u8(src + i)));
  for (; i < n; ++i) dst[i] &= src[i];
}

void mask_or(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) vst1q_u8(dst + i, vorrq_u8(vld1q_u8(dst + i), vld1q_u8(src + i)));
  for (; i < n; ++i) dst[i] |= src[i];
}

std::size_t mask_count(const std::uint8_t* mask, std::size_t n) {
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) c += vaddlvq_u8(vld1q_u8(mask + i));
  for (; i < n; ++i) c += mask[i];
  return c;
}

}  // namespace

const KernelTable& neon_table() noexcept {
  static const KernelTable t{Isa::neon, minmax, range_mask_or, mask_and, mask_or, mask_count};
  return t;
}

}  // namespace ergo::simd::detail
