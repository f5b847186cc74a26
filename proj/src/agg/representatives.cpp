#include "ergo/agg/representatives.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace ergo::agg {

int group_score(const reba::FramePostureScores& s, reba::TableId table) noexcept {
  switch (table) {
    case reba::TableId::A: return s.table_a;
    case reba::TableId::B: return s.table_b;
    case reba::TableId::C: return s.grand;
  }
  return s.grand;
}

std::map<int, std::optional<std::uint32_t>> representative_frames(const reba::ScoredDataset& scored,
                                                                  reba::TableId table, reba::BodySide side) {
  std::map<int, std::vector<std::pair<double, std::uint32_t>>> groups;
  std::map<int, std::optional<std::uint32_t>> out;
  const auto& rows = scored.side(side);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const int score = group_score(rows[r], table);
    out.try_emplace(score);
    const auto idx = scored.frame_indices[r];
    if (scored.dataset.frame(idx).image_ref) groups[score].emplace_back(scored.timestamps[r], idx);
  }
  for (auto& [score, members] : groups) {
    std::sort(members.begin(), members.end());
    out[score] = members[(members.size() - 1) / 2].second;
  }
  return out;
}

}  // namespace ergo::agg
