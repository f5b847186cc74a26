#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "ergo/reba/scoring.hpp"

namespace ergo::agg {

/// Score a frame is grouped by: the grand score for Table C, the raw table
/// value for A and B.
int group_score(const reba::FramePostureScores& s, reba::TableId table) noexcept;

/// For every score present, the frame at the median timestamp of its group
/// (lower median, ties broken by lower frame index). Only frames with an
/// image are eligible; a group without one maps to nullopt.
std::map<int, std::optional<std::uint32_t>> representative_frames(const reba::ScoredDataset& scored,
                                                                  reba::TableId table, reba::BodySide side);

}  // namespace ergo::agg
