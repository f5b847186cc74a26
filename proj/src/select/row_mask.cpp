#include "ergo/select/row_mask.hpp"

namespace ergo::select {

RowMask full_mask(const reba::ScoredDataset& scored) { return RowMask(scored.rows(), 1); }

RowMask row_mask(const reba::ScoredDataset& scored, const FrameIdSet& ids) {
  RowMask mask(scored.rows(), 0);
  // Both sequences are sorted: merge walk.
  const auto& frames = scored.frame_indices;
  std::size_t r = 0;
  for (auto id : ids) {
    while (r < frames.size() && frames[r] < id) ++r;
    if (r == frames.size()) break;
    if (frames[r] == id) mask[r] = 1;
  }
  return mask;
}

RowMask row_mask(const reba::ScoredDataset& scored, const std::optional<FrameIdSet>& ids) {
  return ids ? row_mask(scored, *ids) : full_mask(scored);
}

FrameIdSet to_frame_ids(const reba::ScoredDataset& scored, std::span<const std::uint8_t> mask) {
  std::vector<std::uint32_t> out;
  for (std::size_t r = 0; r < mask.size() && r < scored.rows(); ++r) {
    if (mask[r]) out.push_back(scored.frame_indices[r]);
  }
  return FrameIdSet::from_sorted(std::move(out));
}

}  // namespace ergo::select
