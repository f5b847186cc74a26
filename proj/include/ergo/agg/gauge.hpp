#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ergo/reba/scoring.hpp"
#include "ergo/select/frame_id_set.hpp"

namespace ergo::agg {

struct GaugeEntry {
  std::uint32_t frame_index = 0;
  double angle_deg = 0.0;
  reba::RiskClass risk_class = reba::RiskClass::low;
  int joint_score = 0;
};

/// Angular distribution of one joint over its valid arc.
struct GaugeSeries {
  data::JointId joint;
  data::AngleRange valid_range;
  std::vector<GaugeEntry> entries;
  /// 1-degree bins starting at floor(valid_range.min_deg); the upper bound
  /// falls into the last bin.
  double bin_origin_deg = 0.0;
  std::vector<std::uint64_t> density_bins;
  /// Entry counts per risk class (low, medium, high).
  std::array<std::uint64_t, 3> class_counts{};
  /// false renders the monochrome variant.
  bool colored = true;

  std::size_t bin_of(double angle_deg) const noexcept;
};

/// Throws Error(UnknownJoint).
GaugeSeries gauge_distribution(const reba::ScoredDataset& scored, data::JointId joint,
                               const std::optional<select::FrameIdSet>& selection = std::nullopt,
                               bool colored = true);
GaugeSeries gauge_distribution_mask(const reba::ScoredDataset& scored, data::JointId joint,
                                    std::span<const std::uint8_t> mask, bool colored = true);

}  // namespace ergo::agg
