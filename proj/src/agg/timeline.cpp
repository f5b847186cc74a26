#include "ergo/agg/timeline.hpp"

#include <algorithm>
#include <limits>

#include "ergo/error.hpp"
#include "ergo/select/row_mask.hpp"
#include "ergo/simd/kernels.hpp"

namespace ergo::agg {

std::vector<Limit> joint_limits(const reba::RebaAsset& asset, data::BodyPart part) {
  const auto& bands = asset.angle_bands.bands[part];
  std::vector<Limit> out;
  if (bands.empty()) return out;
  int lowest = std::numeric_limits<int>::max();
  for (const auto& b : bands) lowest = std::min(lowest, b.score);
  // Interior boundaries only, ascending.
  std::vector<const reba::Band*> sorted;
  for (const auto& b : bands) sorted.push_back(&b);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->lo < b->lo; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const bool edge = sorted[i - 1]->score == lowest || sorted[i]->score == lowest;
    out.push_back({sorted[i]->lo, edge && sorted[i - 1]->score != sorted[i]->score});
  }
  return out;
}

std::vector<DownsampledSeries> timeline_window_mask(const reba::ScoredDataset& scored,
                                                    std::span<const data::JointId> joints, double t0, double t1,
                                                    std::size_t max_points, std::span<const std::uint8_t> mask) {
  if (!(t0 < t1)) throw Error(ErrorCode::InvalidArgument, "timeline window needs t0 < t1");
  if (max_points < 2) throw Error(ErrorCode::InvalidArgument, "max_points must be at least 2");
  if (!scored.asset) throw Error(ErrorCode::InvalidArgument, "scored dataset carries no asset");
  for (auto j : joints) {
    if (!j.valid()) throw Error(ErrorCode::UnknownJoint, "unknown joint " + data::to_string(j));
  }

  const auto& ts = scored.timestamps;
  const auto begin = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), t0) - ts.begin());
  const auto end = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), t1) - ts.begin());
  if (begin >= end) throw Error(ErrorCode::EmptyWindow, "no samples in the requested window");

  const std::size_t n = end - begin;
  const std::size_t nb = std::min(n, max_points);
  std::vector<std::size_t> edges(nb + 1);
  for (std::size_t b = 0; b <= nb; ++b) edges[b] = begin + n * b / nb;

  std::vector<DownsampledSeries> out;
  out.reserve(joints.size());
  for (auto joint : joints) {
    DownsampledSeries s;
    s.joint = joint;
    s.samples = n;
    s.limits = joint_limits(*scored.asset, joint.part);
    const auto& col = scored.angles[joint];
    const auto all = simd::minmax(std::span<const double>(col).subspan(begin, n));
    s.value_range = {all.min, all.max};
    s.buckets.reserve(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      const std::size_t lo = edges[b];
      const std::size_t hi = edges[b + 1];
      Bucket k;
      k.t_start = b == 0 ? t0 : ts[lo];
      k.t_end = b + 1 == nb ? t1 : ts[hi];
      const auto mm = simd::minmax(std::span<const double>(col).subspan(lo, hi - lo));
      k.min_deg = mm.min;
      k.max_deg = mm.max;
      k.first_deg = col[lo];
      k.last_deg = col[hi - 1];
      k.first_frame = scored.frame_indices[lo];
      k.count = static_cast<std::uint32_t>(hi - lo);
      int worst = 0;
      for (std::size_t r = lo; r < hi; ++r) worst = std::max(worst, scored.joint_score(joint, r));
      k.max_risk = scored.asset->risk_class(joint.part, worst);
      if (mask.empty()) {
        k.selected = k.count;
      } else {
        k.selected = static_cast<std::uint32_t>(simd::mask_count(mask.subspan(lo, hi - lo)));
      }
      s.buckets.push_back(k);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<DownsampledSeries> timeline_window(const reba::ScoredDataset& scored, std::span<const data::JointId> joints,
                                               double t0, double t1, std::size_t max_points,
                                               const std::optional<select::FrameIdSet>& selection) {
  const auto mask = select::row_mask(scored, selection);
  return timeline_window_mask(scored, joints, t0, t1, max_points, mask);
}

}  // namespace ergo::agg
