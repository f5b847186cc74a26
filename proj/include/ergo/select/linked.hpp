#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ergo/agg/gauge.hpp"
#include "ergo/agg/table_aggregate.hpp"
#include "ergo/agg/timeline.hpp"
#include "ergo/select/frame_id_set.hpp"

namespace ergo::select {

struct TableOverlay {
  agg::TableAggregate full;
  agg::TableAggregate selected;
};

struct GaugeOverlay {
  data::JointId joint;
  double bin_origin_deg = 0.0;
  std::vector<std::uint64_t> full_bins;
  std::vector<std::uint64_t> selected_bins;
  std::array<std::uint64_t, 3> full_classes{};
  std::array<std::uint64_t, 3> selected_classes{};
};

/// Full-scope and selected-scope aggregates for every view. Timeline
/// buckets carry both counts (`count`, `selected`).
struct LinkedCounts {
  std::uint64_t full_total = 0;
  std::uint64_t selected_total = 0;
  /// Both sides, tables A, B, C.
  std::vector<TableOverlay> tables;
  /// All ten joints.
  std::vector<GaugeOverlay> gauges;
  std::vector<agg::DownsampledSeries> timeline;
};

inline constexpr std::size_t kDefaultTimelinePoints = 500;

/// Frames of `selection` that are not scored are ignored.
LinkedCounts linked_counts(const FrameIdSet& selection, const reba::ScoredDataset& scored,
                           std::size_t timeline_points = kDefaultTimelinePoints);

}  // namespace ergo::select
