#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ergo/reba/scoring.hpp"
#include "ergo/select/frame_id_set.hpp"

namespace ergo::select {

/// One 0/1 byte per scored row.
using RowMask = std::vector<std::uint8_t>;

RowMask full_mask(const reba::ScoredDataset& scored);
/// Rows whose frame is in `ids`; ids that are not scored are ignored.
RowMask row_mask(const reba::ScoredDataset& scored, const FrameIdSet& ids);
RowMask row_mask(const reba::ScoredDataset& scored, const std::optional<FrameIdSet>& ids);
FrameIdSet to_frame_ids(const reba::ScoredDataset& scored, std::span<const std::uint8_t> mask);

}  // namespace ergo::select
