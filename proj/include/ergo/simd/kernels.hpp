#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ergo/simd/kernel_table.hpp"

namespace ergo::simd {

std::string_view to_string(Isa isa) noexcept;

/// Scalar reference kernels, always available.
const KernelTable& scalar_kernels() noexcept;

/// Every kernel table that is compiled in and supported by this CPU, scalar
/// first.
std::vector<const KernelTable*> available_kernels();

/// Best supported table, chosen on first use. Setting ERGO_SIMD=scalar in
/// the environment forces the reference kernels.
const KernelTable& active_kernels() noexcept;

MinMax minmax(std::span<const double> x) noexcept;
void range_mask_or(std::span<const double> x, double lo, double hi, std::span<std::uint8_t> mask) noexcept;
void mask_and(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) noexcept;
void mask_or(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) noexcept;
std::size_t mask_count(std::span<const std::uint8_t> mask) noexcept;

}  // namespace ergo::simd
