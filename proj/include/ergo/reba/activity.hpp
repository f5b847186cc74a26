#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ergo/data/dataset.hpp"
#include "ergo/reba/asset.hpp"
#include "ergo/reba/scoring.hpp"

namespace ergo::reba {

/// Activity flags for each of `rows` (frame indices, ascending) on one side,
/// from the joints scored on that side:
///  - static: some joint has stayed within a span of 2 * static_tolerance_deg
///    for more than window_s seconds up to this frame;
///  - repeated: some joint crossed the same band boundary more than
///    repeat_crossings times in the trailing window_s seconds;
///  - rapid: some joint changed by more than rapid_change_deg between
///    consecutive rows inside the trailing window_s seconds.
std::vector<ActivityFlags> compute_activity(const data::Dataset& dataset, std::span<const std::uint32_t> rows,
                                            BodySide side, const RebaAsset& asset);

}  // namespace ergo::reba
