#include "ergo/agg/table_aggregate.hpp"

#include <numeric>

#include "ergo/error.hpp"
#include "ergo/select/row_mask.hpp"

namespace ergo::agg {

std::uint64_t Histogram::total() const noexcept {
  return std::accumulate(bin_counts.begin(), bin_counts.end(), std::uint64_t{0});
}

std::uint64_t Heatmap::total() const noexcept {
  return std::accumulate(cell_counts.begin(), cell_counts.end(), std::uint64_t{0});
}

namespace {

const reba::ScoreTable& checked_table(const reba::ScoredDataset& scored, TableId table) {
  if (static_cast<std::size_t>(table) > 2) throw Error(ErrorCode::UnknownTable, "unknown table");
  if (!scored.asset) throw Error(ErrorCode::InvalidArgument, "scored dataset carries no asset");
  return scored.asset->table(table);
}

std::vector<int> dims_of(const reba::ScoreTable& t, const std::vector<std::string>& attrs) {
  std::vector<int> out;
  for (const auto& a : attrs) out.push_back(t.dim_index(a));
  return out;
}

/// Mixed-radix position of `inputs` over the attributes `dims` (outer first).
int combo(const reba::ScoreTable& t, const std::vector<int>& dims, const reba::TableInputs& inputs) {
  int pos = 0;
  for (int d : dims) pos = pos * t.dims[static_cast<std::size_t>(d)].cardinality + (inputs[static_cast<std::size_t>(d)] - 1);
  return pos;
}

int combos(const reba::ScoreTable& t, const std::vector<int>& dims) {
  int n = 1;
  for (int d : dims) n *= t.dims[static_cast<std::size_t>(d)].cardinality;
  return n;
}

HierarchicalHistogram empty_hierarchy(const reba::ScoreTable& t, const std::vector<std::string>& attrs,
                                      Orientation o) {
  HierarchicalHistogram h;
  h.orientation = o;
  int parents = 1;
  std::vector<int> cards;
  for (const auto& a : attrs) {
    const int card = t.dims[static_cast<std::size_t>(t.dim_index(a))].cardinality;
    HistogramLevel level{a, card, {}};
    level.histograms.reserve(static_cast<std::size_t>(parents));
    for (int p = 0; p < parents; ++p) {
      Histogram hist;
      // Decode parent combo into per-level bin values.
      int rest = p;
      hist.parent_bins.assign(cards.size(), 0);
      for (std::size_t k = cards.size(); k-- > 0;) {
        hist.parent_bins[k] = rest % cards[k] + 1;
        rest /= cards[k];
      }
      hist.bin_counts.assign(static_cast<std::size_t>(card), 0);
      level.histograms.push_back(std::move(hist));
    }
    h.levels.push_back(std::move(level));
    cards.push_back(card);
    parents *= card;
  }
  return h;
}

void add_to_hierarchy(HierarchicalHistogram& h, const reba::ScoreTable& t, const std::vector<int>& dims,
                      const reba::TableInputs& inputs) {
  int parent = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const auto d = static_cast<std::size_t>(dims[k]);
    const int bin = inputs[d] - 1;
    ++h.levels[k].histograms[static_cast<std::size_t>(parent)].bin_counts[static_cast<std::size_t>(bin)];
    parent = parent * t.dims[d].cardinality + bin;
  }
}

}  // namespace

CellPosition heatmap_cell(const reba::ScoreTable& table, const reba::TableInputs& inputs) {
  return {combo(table, dims_of(table, table.vertical), inputs), combo(table, dims_of(table, table.horizontal), inputs)};
}

TableAggregate table_aggregate_mask(const reba::ScoredDataset& scored, BodySide side, TableId table,
                                    std::span<const std::uint8_t> mask) {
  const auto& t = checked_table(scored, table);
  const auto hdims = dims_of(t, t.horizontal);
  const auto vdims = dims_of(t, t.vertical);

  TableAggregate out;
  out.table = table;
  out.side = side;
  out.horizontal = empty_hierarchy(t, t.horizontal, Orientation::horizontal);
  out.vertical = empty_hierarchy(t, t.vertical, Orientation::vertical);
  out.heatmap.rows = combos(t, vdims);
  out.heatmap.cols = combos(t, hdims);
  const auto cells = static_cast<std::size_t>(out.heatmap.rows * out.heatmap.cols);
  out.heatmap.cell_counts.assign(cells, 0);
  out.heatmap.cell_scores.assign(cells, 0);

  // Cell scores: walk every table cell once and place it on the grid.
  for (std::size_t flat = 0; flat < t.cell_count(); ++flat) {
    const auto idx = t.unflatten(flat);
    reba::TableInputs in;
    in.size = idx.size();
    for (std::size_t d = 0; d < idx.size(); ++d) in.values[d] = idx[d];
    const auto pos = static_cast<std::size_t>(combo(t, vdims, in) * out.heatmap.cols + combo(t, hdims, in));
    out.heatmap.cell_scores[pos] = t.cells[flat];
  }

  const auto& rows = scored.side(side);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r < mask.size() && mask[r] == 0) continue;
    const auto in = rows[r].table_inputs(table);
    add_to_hierarchy(out.horizontal, t, hdims, in);
    add_to_hierarchy(out.vertical, t, vdims, in);
    ++out.heatmap.cell_counts[static_cast<std::size_t>(combo(t, vdims, in) * out.heatmap.cols + combo(t, hdims, in))];
    ++out.n;
  }
  return out;
}

TableAggregate table_aggregate(const reba::ScoredDataset& scored, BodySide side, TableId table,
                               const std::optional<select::FrameIdSet>& selection) {
  const auto mask = select::row_mask(scored, selection);
  return table_aggregate_mask(scored, side, table, mask);
}

}  // namespace ergo::agg
