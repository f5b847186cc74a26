#include "ergo/agg/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "ergo/error.hpp"
#include "ergo/select/row_mask.hpp"

namespace ergo::agg {

std::size_t GaugeSeries::bin_of(double angle_deg) const noexcept {
  if (density_bins.empty()) return 0;
  const double off = std::floor(angle_deg - bin_origin_deg);
  if (off <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(off), density_bins.size() - 1);
}

GaugeSeries gauge_distribution_mask(const reba::ScoredDataset& scored, data::JointId joint,
                                    std::span<const std::uint8_t> mask, bool colored) {
  if (!joint.valid()) throw Error(ErrorCode::UnknownJoint, "unknown joint " + data::to_string(joint));
  if (!scored.asset) throw Error(ErrorCode::InvalidArgument, "scored dataset carries no asset");
  const auto& asset = *scored.asset;

  GaugeSeries g;
  g.joint = joint;
  g.colored = colored;
  g.valid_range = asset.valid_ranges.joints[joint];
  g.bin_origin_deg = std::floor(g.valid_range.min_deg);
  const auto bins = std::max(1.0, std::ceil(g.valid_range.max_deg) - g.bin_origin_deg);
  g.density_bins.assign(static_cast<std::size_t>(bins), 0);

  const auto& angles = scored.angles[joint];
  for (std::size_t r = 0; r < scored.rows(); ++r) {
    if (r < mask.size() && mask[r] == 0) continue;
    const int score = scored.joint_score(joint, r);
    const auto cls = asset.risk_class(joint.part, score);
    g.entries.push_back({scored.frame_indices[r], angles[r], cls, score});
    ++g.density_bins[g.bin_of(angles[r])];
    ++g.class_counts[static_cast<std::size_t>(cls)];
  }
  return g;
}

GaugeSeries gauge_distribution(const reba::ScoredDataset& scored, data::JointId joint,
                               const std::optional<select::FrameIdSet>& selection, bool colored) {
  const auto mask = select::row_mask(scored, selection);
  return gauge_distribution_mask(scored, joint, mask, colored);
}

}  // namespace ergo::agg
