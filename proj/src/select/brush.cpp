#include "ergo/select/brush.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ergo/error.hpp"
#include "ergo/simd/kernels.hpp"

namespace ergo::select {

std::string_view to_string(Combine c) noexcept { return c == Combine::union_ ? "union" : "intersection"; }

std::optional<Combine> parse_combine(std::string_view text) noexcept {
  if (text == "intersection") return Combine::intersection;
  if (text == "union") return Combine::union_;
  return std::nullopt;
}

namespace {

struct LayoutPath {
  /// Dimension indices of the attributes on levels 1..level.
  std::vector<int> dims;
};

/// Dims from the top of the attribute's layout down to the attribute.
std::optional<LayoutPath> layout_path(const reba::ScoreTable& t, const std::string& attribute) {
  for (const auto* attrs : {&t.horizontal, &t.vertical}) {
    const auto it = std::find(attrs->begin(), attrs->end(), attribute);
    if (it == attrs->end()) continue;
    LayoutPath p;
    for (auto a = attrs->begin(); a != std::next(it); ++a) p.dims.push_back(t.dim_index(*a));
    return p;
  }
  return std::nullopt;
}

void check_ranges(const std::vector<Range>& ranges, const std::string& id) {
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    const auto& r = ranges[i];
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi) {
      throw SchemaMismatch("ranges[" + std::to_string(i) + "]", 0, "brush " + id + ": range must satisfy lo <= hi");
    }
  }
}

void check_side(reba::BodySide side, const std::string& id) {
  if (side != reba::BodySide::left && side != reba::BodySide::right) {
    throw SchemaMismatch("side", 0, "brush " + id + ": unknown side");
  }
}

const reba::ScoreTable& checked_table(reba::TableId table, const reba::RebaAsset& asset, const std::string& id) {
  if (static_cast<std::size_t>(table) > 2) throw SchemaMismatch("table", 0, "brush " + id + ": unknown table");
  return asset.table(table);
}

}  // namespace

void validate(const Brush& brush, const reba::RebaAsset& asset) {
  const auto& id = brush.id;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ScoreBinBrush>) {
          const auto& t = checked_table(k.table, asset, id);
          check_side(k.side, id);
          const auto path = layout_path(t, k.attribute);
          if (!path) throw SchemaMismatch("attribute", 0, "brush " + id + ": table has no attribute " + k.attribute);
          if (k.level != static_cast<int>(path->dims.size())) {
            throw SchemaMismatch("level", 0,
                                 "brush " + id + ": attribute " + k.attribute + " is on level " +
                                     std::to_string(path->dims.size()));
          }
          if (!k.parent_bins.empty() && k.parent_bins.size() + 1 != path->dims.size()) {
            throw SchemaMismatch("parent_bins", 0, "brush " + id + ": expected one value per level above");
          }
          for (std::size_t i = 0; i < k.parent_bins.size(); ++i) {
            const int card = t.dims[static_cast<std::size_t>(path->dims[i])].cardinality;
            if (k.parent_bins[i] < 1 || k.parent_bins[i] > card) {
              throw SchemaMismatch("parent_bins", 0, "brush " + id + ": parent bin out of range");
            }
          }
          const int card = t.dims[static_cast<std::size_t>(path->dims.back())].cardinality;
          for (int b : k.bins) {
            if (b < 1 || b > card) {
              throw SchemaMismatch("bins", 0,
                                   "brush " + id + ": bin " + std::to_string(b) + " outside [1, " +
                                       std::to_string(card) + "]");
            }
          }
        } else if constexpr (std::is_same_v<K, HeatmapCellBrush>) {
          const auto& t = checked_table(k.table, asset, id);
          check_side(k.side, id);
          int rows = 1;
          int cols = 1;
          for (const auto& a : t.vertical) rows *= t.dims[static_cast<std::size_t>(t.dim_index(a))].cardinality;
          for (const auto& a : t.horizontal) cols *= t.dims[static_cast<std::size_t>(t.dim_index(a))].cardinality;
          for (const auto& [r, c] : k.cells) {
            if (r < 0 || r >= rows || c < 0 || c >= cols) {
              throw SchemaMismatch("cells", 0,
                                   "brush " + id + ": cell (" + std::to_string(r) + "," + std::to_string(c) +
                                       ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
            }
          }
        } else if constexpr (std::is_same_v<K, AngleRangeBrush>) {
          if (!k.joint.valid()) throw SchemaMismatch("joint", 0, "brush " + id + ": unknown joint");
          check_ranges(k.ranges, id);
        } else {
          check_ranges(k.ranges, id);
        }
      },
      brush.kind);
}

void validate(const BrushSet& set, const reba::RebaAsset& asset) {
  std::set<std::string> ids;
  for (const auto& b : set.brushes) {
    if (!ids.insert(b.id).second) throw SchemaMismatch("id", 0, "duplicate brush id " + b.id);
    validate(b, asset);
  }
}

RowMask brush_mask(const Brush& brush, const reba::ScoredDataset& scored) {
  if (!brush.active) return full_mask(scored);
  if (!scored.asset) throw Error(ErrorCode::InvalidArgument, "scored dataset carries no asset");
  validate(brush, *scored.asset);
  const std::size_t n = scored.rows();
  RowMask mask(n, 0);

  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ScoreBinBrush>) {
          const auto& t = scored.asset->table(k.table);
          const auto path = *layout_path(t, k.attribute);
          const int card = t.dims[static_cast<std::size_t>(path.dims.back())].cardinality;
          std::vector<std::uint8_t> wanted(static_cast<std::size_t>(card) + 1, 0);
          for (int b : k.bins) wanted[static_cast<std::size_t>(b)] = 1;
          const auto& rows = scored.side(k.side);
          for (std::size_t r = 0; r < n; ++r) {
            const auto in = rows[r].table_inputs(k.table);
            bool hit = wanted[static_cast<std::size_t>(in[static_cast<std::size_t>(path.dims.back())])] != 0;
            for (std::size_t p = 0; hit && p < k.parent_bins.size(); ++p) {
              hit = in[static_cast<std::size_t>(path.dims[p])] == k.parent_bins[p];
            }
            mask[r] = hit ? 1 : 0;
          }
        } else if constexpr (std::is_same_v<K, HeatmapCellBrush>) {
          const auto& t = scored.asset->table(k.table);
          std::set<std::pair<int, int>> cells(k.cells.begin(), k.cells.end());
          const auto& rows = scored.side(k.side);
          for (std::size_t r = 0; r < n; ++r) {
            const auto pos = agg::heatmap_cell(t, rows[r].table_inputs(k.table));
            mask[r] = cells.count({pos.row, pos.col}) != 0 ? 1 : 0;
          }
        } else if constexpr (std::is_same_v<K, AngleRangeBrush>) {
          const auto& col = scored.angles[k.joint];
          for (const auto& range : k.ranges) {
            const double pad = range.lo == range.hi ? kPointTolerance : 0.0;
            simd::range_mask_or(col, range.lo - pad, range.hi + pad, mask);
          }
        } else {
          const auto& ts = scored.timestamps;
          for (const auto& range : k.ranges) {
            const auto lo = std::lower_bound(ts.begin(), ts.end(), range.lo) - ts.begin();
            const auto hi = std::upper_bound(ts.begin(), ts.end(), range.hi) - ts.begin();
            std::fill(mask.begin() + lo, mask.begin() + std::max(lo, hi), std::uint8_t{1});
          }
        }
      },
      brush.kind);
  return mask;
}

RowMask composite_mask(const BrushSet& set, const reba::ScoredDataset& scored) {
  const bool any_active = std::any_of(set.brushes.begin(), set.brushes.end(), [](const Brush& b) { return b.active; });
  if (!any_active) return full_mask(scored);
  if (scored.asset) validate(set, *scored.asset);
  const bool inter = set.combine == Combine::intersection;
  RowMask acc(scored.rows(), inter ? 1 : 0);
  for (const auto& b : set.brushes) {
    if (!b.active) continue;
    const auto m = brush_mask(b, scored);
    if (inter) {
      simd::mask_and(acc, m);
    } else {
      simd::mask_or(acc, m);
    }
  }
  return acc;
}

FrameIdSet evaluate_brush(const Brush& brush, const reba::ScoredDataset& scored) {
  return to_frame_ids(scored, brush_mask(brush, scored));
}

FrameIdSet evaluate_composite(const BrushSet& set, const reba::ScoredDataset& scored) {
  return to_frame_ids(scored, composite_mask(set, scored));
}

}  // namespace ergo::select
