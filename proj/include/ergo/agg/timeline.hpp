#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ergo/reba/scoring.hpp"
#include "ergo/select/frame_id_set.hpp"

namespace ergo::agg {

struct Bucket {
  double t_start = 0.0;
  double t_end = 0.0;
  double min_deg = 0.0;
  double max_deg = 0.0;
  double first_deg = 0.0;
  double last_deg = 0.0;
  reba::RiskClass max_risk = reba::RiskClass::low;
  std::uint32_t first_frame = 0;
  std::uint32_t count = 0;
  /// Samples in the bucket that are also in the selection.
  std::uint32_t selected = 0;
};

/// A band boundary of the joint. `risk_boundary` marks the edges of the
/// lowest-scoring band, where a posture starts to count as risky.
struct Limit {
  double angle_deg = 0.0;
  bool risk_boundary = false;
};

struct DownsampledSeries {
  data::JointId joint;
  /// Contiguous, in time order; the first starts at t0 and the last ends
  /// at t1.
  std::vector<Bucket> buckets;
  std::vector<Limit> limits;
  /// Range of the samples in the window, for an independent value axis.
  data::AngleRange value_range;
  std::size_t samples = 0;
};

/// Min-max decimation of the samples with t0 <= t < t1 into at most
/// `max_points` buckets of near-equal sample counts. With no more samples
/// than `max_points` every bucket holds one sample. Throws
/// Error(InvalidArgument) when t0 >= t1 or max_points < 2, Error(EmptyWindow)
/// when no sample falls in the window.
std::vector<DownsampledSeries> timeline_window(const reba::ScoredDataset& scored, std::span<const data::JointId> joints,
                                               double t0, double t1, std::size_t max_points,
                                               const std::optional<select::FrameIdSet>& selection = std::nullopt);
std::vector<DownsampledSeries> timeline_window_mask(const reba::ScoredDataset& scored,
                                                    std::span<const data::JointId> joints, double t0, double t1,
                                                    std::size_t max_points, std::span<const std::uint8_t> mask);

/// Joint limits from the asset's bands.
std::vector<Limit> joint_limits(const reba::RebaAsset& asset, data::BodyPart part);

}  // namespace ergo::agg
