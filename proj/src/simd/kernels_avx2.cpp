// Compiled with -mavx2; only reached after a runtime CPU check.
#include "ergo/simd/kernel_table.hpp"

#include <immintrin.h>

#include <cstring>
#include <limits>

namespace ergo::simd::detail {

namespace {

MinMax minmax(const double* x, std::size_t n) {
  const double inf = std::numeric_limits<double>::infinity();
  __m256d vmin = _mm256_set1_pd(inf);
  __m256d vmax = _mm256_set1_pd(-inf);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a = _mm256_loadu_pd(x + i);
    const __m256d b = _mm256_loadu_pd(x + i + 4);
    vmin = _mm256_min_pd(vmin, _mm256_min_pd(a, b));
    vmax = _mm256_max_pd(vmax, _mm256_max_pd(a, b));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(x + i);
    vmin = _mm256_min_pd(vmin, a);
    vmax = _mm256_max_pd(vmax, a);
  }
  alignas(32) double lo[4];
  alignas(32) double hi[4];
  _mm256_store_pd(lo, vmin);
  _mm256_store_pd(hi, vmax);
  MinMax r{lo[0], hi[0]};
  for (int k = 1; k < 4; ++k) {
    if (lo[k] < r.min) r.min = lo[k];
    if (hi[k] > r.max) r.max = hi[k];
  }
  for (; i < n; ++i) {
    if (x[i] < r.min) r.min = x[i];
    if (x[i] > r.max) r.max = x[i];
  }
  return r;
}

// Expands a 4-bit compare mask into four 0/1 bytes.
constexpr std::uint32_t expand_nibble(unsigned bits) {
  std::uint32_t v = 0;
  for (unsigned k = 0; k < 4; ++k) {
    if (bits & (1u << k)) v |= 1u << (8 * k);
  }
  return v;
}

constexpr std::uint32_t kNibbleBytes[16] = {
    expand_nibble(0),  expand_nibble(1),  expand_nibble(2),  expand_nibble(3),
    expand_nibble(4),  expand_nibble(5),  expand_nibble(6),  expand_nibble(7),
    expand_nibble(8),  expand_nibble(9),  expand_nibble(10), expand_nibble(11),
    expand_nibble(12), expand_nibble(13), expand_nibble(14), expand_nibble(15)};

void range_mask_or(const double* x, std::size_t n, double lo, double hi, std::uint8_t* mask) {
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d in = _mm256_and_pd(_mm256_cmp_pd(v, vlo, _CMP_GE_OQ), _mm256_cmp_pd(v, vhi, _CMP_LE_OQ));
    const auto bits = static_cast<unsigned>(_mm256_movemask_pd(in));
    std::uint32_t cur;
    std::memcpy(&cur, mask + i, 4);
    cur |= kNibbleBytes[bits];
    std::memcpy(mask + i, &cur, 4);
  }
  for (; i < n; ++i) mask[i] |= static_cast<std::uint8_t>(x[i] >= lo && x[i] <= hi);
}

void mask_and(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(a, b));
  }
  for (; i < n; ++i) dst[i] &= src[i];
}

void mask_or(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(a, b));
  }
  for (; i < n; ++i) dst[i] |= src[i];
}

std::size_t mask_count(const std::uint8_t* mask, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(v, zero));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t c = static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
  for (; i < n; ++i) c += mask[i];
  return c;
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable t{Isa::avx2, minmax, range_mask_or, mask_and, mask_or, mask_count};
  return t;
}

}  // namespace ergo::simd::detail
