#include "ergo/select/linked.hpp"

#include <cmath>
#include <limits>

#include "ergo/select/row_mask.hpp"
#include "ergo/simd/kernels.hpp"

namespace ergo::select {

LinkedCounts linked_counts(const FrameIdSet& selection, const reba::ScoredDataset& scored,
                           std::size_t timeline_points) {
  const auto mask = row_mask(scored, selection);
  const auto all = full_mask(scored);

  LinkedCounts out;
  out.full_total = scored.rows();
  out.selected_total = simd::mask_count(mask);

  for (auto side : data::kBothSides) {
    for (auto table : reba::kAllTables) {
      out.tables.push_back({agg::table_aggregate_mask(scored, side, table, all),
                            agg::table_aggregate_mask(scored, side, table, mask)});
    }
  }
  for (auto joint : data::kAllJoints) {
    auto full = agg::gauge_distribution_mask(scored, joint, all);
    auto sel = agg::gauge_distribution_mask(scored, joint, mask);
    out.gauges.push_back({joint, full.bin_origin_deg, std::move(full.density_bins), std::move(sel.density_bins),
                          full.class_counts, sel.class_counts});
  }
  if (scored.rows() > 0) {
    const double t0 = scored.timestamps.front();
    const double t1 = std::nextafter(scored.timestamps.back(), std::numeric_limits<double>::infinity());
    out.timeline = agg::timeline_window_mask(scored, data::kAllJoints, t0, t1, timeline_points, mask);
  }
  return out;
}

}  // namespace ergo::select
