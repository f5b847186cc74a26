#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ergo/agg/table_aggregate.hpp"
#include "ergo/reba/scoring.hpp"
#include "ergo/select/frame_id_set.hpp"
#include "ergo/select/row_mask.hpp"

namespace ergo::select {

/// Angles closer than this to a zero-width range still match it.
inline constexpr double kPointTolerance = 0.05;

/// Closed interval; lo == hi selects values within kPointTolerance.
struct Range {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Range&, const Range&) = default;
};

/// Frames whose score on `attribute` equals any of `bins`. `level` is the
/// 1-based histogram level of the attribute in its table layout;
/// `parent_bins`, when given, holds the values of the levels above it so a
/// child-histogram bin only matches frames under that parent.
struct ScoreBinBrush {
  reba::TableId table = reba::TableId::A;
  reba::BodySide side = reba::BodySide::left;
  int level = 1;
  std::string attribute;
  std::vector<int> bins;
  std::vector<int> parent_bins;

  friend bool operator==(const ScoreBinBrush&, const ScoreBinBrush&) = default;
};

struct HeatmapCellBrush {
  reba::TableId table = reba::TableId::A;
  reba::BodySide side = reba::BodySide::left;
  std::vector<std::pair<int, int>> cells;

  friend bool operator==(const HeatmapCellBrush&, const HeatmapCellBrush&) = default;
};

struct AngleRangeBrush {
  data::JointId joint;
  std::vector<Range> ranges;

  friend bool operator==(const AngleRangeBrush&, const AngleRangeBrush&) = default;
};

struct TimeRangeBrush {
  std::vector<Range> ranges;

  friend bool operator==(const TimeRangeBrush&, const TimeRangeBrush&) = default;
};

using BrushKind = std::variant<ScoreBinBrush, HeatmapCellBrush, AngleRangeBrush, TimeRangeBrush>;

struct Brush {
  std::string id;
  BrushKind kind;
  bool active = true;

  friend bool operator==(const Brush&, const Brush&) = default;
};

enum class Combine : std::uint8_t { intersection, union_ };

struct BrushSet {
  std::vector<Brush> brushes;
  Combine combine = Combine::intersection;

  friend bool operator==(const BrushSet&, const BrushSet&) = default;
};

std::string_view to_string(Combine c) noexcept;
std::optional<Combine> parse_combine(std::string_view text) noexcept;

/// Throws SchemaMismatch naming the offending field when the brush does not
/// fit the table layout or asset.
void validate(const Brush& brush, const reba::RebaAsset& asset);
/// Also rejects duplicate ids.
void validate(const BrushSet& set, const reba::RebaAsset& asset);

/// Row mask of the frames a brush selects. An inactive brush selects every
/// scored frame.
RowMask brush_mask(const Brush& brush, const reba::ScoredDataset& scored);
RowMask composite_mask(const BrushSet& set, const reba::ScoredDataset& scored);

FrameIdSet evaluate_brush(const Brush& brush, const reba::ScoredDataset& scored);
FrameIdSet evaluate_composite(const BrushSet& set, const reba::ScoredDataset& scored);

}  // namespace ergo::select
