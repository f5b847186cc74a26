#pragma once

#include <map>
#include <optional>

#include <json.hpp>

#include "ergo/agg/gauge.hpp"
#include "ergo/agg/table_aggregate.hpp"
#include "ergo/agg/timeline.hpp"
#include "ergo/select/brush.hpp"
#include "ergo/select/linked.hpp"

namespace ergo::service {

using nlohmann::json;

json to_json(const agg::HierarchicalHistogram& h);
json to_json(const agg::Heatmap& h);
json to_json(const agg::TableAggregate& t);
/// `with_entries = false` drops the per-frame entries.
json to_json(const agg::GaugeSeries& g, bool with_entries = true);
json to_json(const agg::DownsampledSeries& s);
json to_json(const std::vector<agg::DownsampledSeries>& series);
json to_json(const std::map<int, std::optional<std::uint32_t>>& representatives);
json to_json(const select::LinkedCounts& c);
json to_json(const select::FrameIdSet& ids);

/// Canonical brush encoding:
///   {"id", "active", "kind": "score_bin", "table", "side", "level",
///    "attribute", "bins", "parent_bins"}
///   {"id", "active", "kind": "heatmap_cell", "table", "side", "cells": [[r,c], ...]}
///   {"id", "active", "kind": "angle_range", "joint", "ranges": [[lo,hi], ...]}
///   {"id", "active", "kind": "time_range", "ranges": [[t0,t1], ...]}
/// and a set is {"combine": "intersection"|"union", "brushes": [...]}.
json to_json(const select::Brush& b);
json to_json(const select::BrushSet& s);
/// Throw SchemaMismatch naming the offending field.
select::Brush brush_from_json(const json& j);
select::BrushSet brush_set_from_json(const json& j);

}  // namespace ergo::service
