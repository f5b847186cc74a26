#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ergo/reba/scoring.hpp"
#include "ergo/select/frame_id_set.hpp"

namespace ergo::agg {

using reba::BodySide;
using reba::TableId;

enum class Orientation : std::uint8_t { horizontal, vertical };

struct Histogram {
  /// Values of the attributes on the levels above (empty on level 1).
  std::vector<int> parent_bins;
  /// Count per score value 1..cardinality, ascending.
  std::vector<std::uint64_t> bin_counts;

  std::uint64_t total() const noexcept;
};

struct HistogramLevel {
  std::string attribute;
  int cardinality = 0;
  /// One histogram per bin of the level above, in row-major parent order.
  std::vector<Histogram> histograms;
};

/// Marginal histograms of one table orientation. Level 1 holds a single
/// histogram over the first attribute; level k holds one histogram per bin
/// of level k-1.
struct HierarchicalHistogram {
  Orientation orientation = Orientation::horizontal;
  std::vector<HistogramLevel> levels;
};

/// Frequency grid over the table cells. Rows enumerate the vertical
/// attributes, columns the horizontal ones (outer level first); both
/// grids are row-major.
struct Heatmap {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint64_t> cell_counts;
  std::vector<int> cell_scores;

  std::uint64_t count(int r, int c) const { return cell_counts[static_cast<std::size_t>(r * cols + c)]; }
  int score(int r, int c) const { return cell_scores[static_cast<std::size_t>(r * cols + c)]; }
  std::uint64_t total() const noexcept;
};

struct TableAggregate {
  TableId table = TableId::A;
  BodySide side = BodySide::left;
  HierarchicalHistogram horizontal;
  HierarchicalHistogram vertical;
  Heatmap heatmap;
  /// Frames counted.
  std::uint64_t n = 0;
};

/// Heatmap cell (row, col) of a row's table inputs.
struct CellPosition {
  int row = 0;
  int col = 0;
};
CellPosition heatmap_cell(const reba::ScoreTable& table, const reba::TableInputs& inputs);

TableAggregate table_aggregate(const reba::ScoredDataset& scored, BodySide side, TableId table,
                               const std::optional<select::FrameIdSet>& selection = std::nullopt);

/// Same, over a row mask (one byte per scored row).
TableAggregate table_aggregate_mask(const reba::ScoredDataset& scored, BodySide side, TableId table,
                                    std::span<const std::uint8_t> mask);

}  // namespace ergo::agg
