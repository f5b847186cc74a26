#include <algorithm>
#include <cstdlib>
#include <string_view>

#include "ergo/simd/kernels.hpp"

namespace ergo::simd {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "?";
}

const KernelTable& scalar_kernels() noexcept { return detail::scalar_table(); }

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&detail::scalar_table()};
#if defined(ERGO_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) out.push_back(&detail::avx2_table());
#endif
#if defined(ERGO_HAVE_NEON)
  out.push_back(&detail::neon_table());
#endif
  return out;
}

const KernelTable& active_kernels() noexcept {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("ERGO_SIMD");
    const auto tables = available_kernels();
    if (env != nullptr) {
      for (const auto* t : tables) {
        if (to_string(t->isa) == env) return t;
      }
    }
    return tables.back();
  }();
  return *chosen;
}

MinMax minmax(std::span<const double> x) noexcept { return active_kernels().minmax(x.data(), x.size()); }

void range_mask_or(std::span<const double> x, double lo, double hi, std::span<std::uint8_t> mask) noexcept {
  active_kernels().range_mask_or(x.data(), std::min(x.size(), mask.size()), lo, hi, mask.data());
}

void mask_and(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) noexcept {
  active_kernels().mask_and(dst.data(), src.data(), std::min(dst.size(), src.size()));
}

void mask_or(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) noexcept {
  active_kernels().mask_or(dst.data(), src.data(), std::min(dst.size(), src.size()));
}

std::size_t mask_count(std::span<const std::uint8_t> mask) noexcept {
  return active_kernels().mask_count(mask.data(), mask.size());
}

}  // namespace ergo::simd
