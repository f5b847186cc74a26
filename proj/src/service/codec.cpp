#include "ergo/service/codec.hpp"

#include "ergo/error.hpp"

namespace ergo::service {

json to_json(const agg::HierarchicalHistogram& h) {
  json levels = json::array();
  for (const auto& level : h.levels) {
    json hists = json::array();
    for (const auto& hist : level.histograms) {
      hists.push_back({{"parent_bins", hist.parent_bins}, {"bin_counts", hist.bin_counts}});
    }
    levels.push_back({{"attribute", level.attribute}, {"cardinality", level.cardinality}, {"histograms", hists}});
  }
  return {{"orientation", h.orientation == agg::Orientation::horizontal ? "horizontal" : "vertical"},
          {"levels", levels}};
}

json to_json(const agg::Heatmap& h) {
  return {{"rows", h.rows}, {"cols", h.cols}, {"cell_counts", h.cell_counts}, {"cell_scores", h.cell_scores}};
}

json to_json(const agg::TableAggregate& t) {
  return {{"table", reba::to_string(t.table)},
          {"side", data::to_string(t.side)},
          {"n", t.n},
          {"horizontal", to_json(t.horizontal)},
          {"vertical", to_json(t.vertical)},
          {"heatmap", to_json(t.heatmap)}};
}

json to_json(const agg::GaugeSeries& g, bool with_entries) {
  json out = {{"joint", data::to_string(g.joint)},
              {"valid_range", {g.valid_range.min_deg, g.valid_range.max_deg}},
              {"bin_origin_deg", g.bin_origin_deg},
              {"bin_width_deg", 1.0},
              {"density_bins", g.density_bins},
              {"class_counts",
               {{"low", g.class_counts[0]}, {"medium", g.class_counts[1]}, {"high", g.class_counts[2]}}},
              {"colored", g.colored}};
  if (with_entries) {
    json entries = json::array();
    for (const auto& e : g.entries) {
      entries.push_back({{"frame_index", e.frame_index},
                         {"angle_deg", e.angle_deg},
                         {"risk_class", reba::to_string(e.risk_class)},
                         {"joint_score", e.joint_score}});
    }
    out["entries"] = std::move(entries);
  }
  return out;
}

json to_json(const agg::DownsampledSeries& s) {
  json buckets = json::array();
  for (const auto& b : s.buckets) {
    buckets.push_back({{"t_start", b.t_start},
                       {"t_end", b.t_end},
                       {"min_deg", b.min_deg},
                       {"max_deg", b.max_deg},
                       {"first_deg", b.first_deg},
                       {"last_deg", b.last_deg},
                       {"max_risk", reba::to_string(b.max_risk)},
                       {"first_frame", b.first_frame},
                       {"count", b.count},
                       {"selected", b.selected}});
  }
  json limits = json::array();
  for (const auto& l : s.limits) limits.push_back({{"angle_deg", l.angle_deg}, {"risk_boundary", l.risk_boundary}});
  return {{"joint", data::to_string(s.joint)},
          {"samples", s.samples},
          {"value_range", {s.value_range.min_deg, s.value_range.max_deg}},
          {"limits", limits},
          {"buckets", buckets}};
}

json to_json(const std::vector<agg::DownsampledSeries>& series) {
  json out = json::array();
  for (const auto& s : series) out.push_back(to_json(s));
  return out;
}

json to_json(const std::map<int, std::optional<std::uint32_t>>& representatives) {
  json out = json::array();
  for (const auto& [score, frame] : representatives) {
    out.push_back({{"score", score}, {"frame_index", frame ? json(*frame) : json(nullptr)}});
  }
  return out;
}

json to_json(const select::LinkedCounts& c) {
  json tables = json::array();
  for (const auto& t : c.tables) tables.push_back({{"full", to_json(t.full)}, {"selected", to_json(t.selected)}});
  json gauges = json::array();
  for (const auto& g : c.gauges) {
    gauges.push_back({{"joint", data::to_string(g.joint)},
                      {"bin_origin_deg", g.bin_origin_deg},
                      {"full_bins", g.full_bins},
                      {"selected_bins", g.selected_bins},
                      {"full_classes", g.full_classes},
                      {"selected_classes", g.selected_classes}});
  }
  return {{"full_total", c.full_total},
          {"selected_total", c.selected_total},
          {"tables", tables},
          {"gauges", gauges},
          {"timeline", to_json(c.timeline)}};
}

json to_json(const select::FrameIdSet& ids) {
  return json(std::vector<std::uint32_t>(ids.begin(), ids.end()));
}

namespace {

json ranges_json(const std::vector<select::Range>& ranges) {
  json out = json::array();
  for (const auto& r : ranges) out.push_back({r.lo, r.hi});
  return out;
}

[[noreturn]] void bad(const std::string& field, const std::string& detail) { throw SchemaMismatch(field, 0, detail); }

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) bad(name, std::string("missing field ") + name);
  return j.at(name);
}

template <class T>
T get(const json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const json::exception& e) {
    bad(name, std::string("bad value for ") + name + ": " + e.what());
  }
}

reba::TableId table_field(const json& j) {
  const auto t = reba::parse_table_id(get<std::string>(j, "table"));
  if (!t) bad("table", "unknown table");
  return *t;
}

reba::BodySide side_field(const json& j) {
  const auto s = data::parse_body_side(get<std::string>(j, "side"));
  if (!s) bad("side", "unknown side");
  return *s;
}

std::vector<select::Range> ranges_field(const json& j) {
  const auto& arr = field(j, "ranges");
  if (!arr.is_array()) bad("ranges", "ranges must be an array");
  std::vector<select::Range> out;
  for (const auto& r : arr) {
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
      bad("ranges", "each range is [lo, hi]");
    }
    out.push_back({r[0].get<double>(), r[1].get<double>()});
  }
  return out;
}

}  // namespace

json to_json(const select::Brush& b) {
  json out = {{"id", b.id}, {"active", b.active}};
  std::visit(
      [&out](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, select::ScoreBinBrush>) {
          out["kind"] = "score_bin";
          out["table"] = reba::to_string(k.table);
          out["side"] = data::to_string(k.side);
          out["level"] = k.level;
          out["attribute"] = k.attribute;
          out["bins"] = k.bins;
          out["parent_bins"] = k.parent_bins;
        } else if constexpr (std::is_same_v<K, select::HeatmapCellBrush>) {
          out["kind"] = "heatmap_cell";
          out["table"] = reba::to_string(k.table);
          out["side"] = data::to_string(k.side);
          json cells = json::array();
          for (const auto& [r, c] : k.cells) cells.push_back({r, c});
          out["cells"] = std::move(cells);
        } else if constexpr (std::is_same_v<K, select::AngleRangeBrush>) {
          out["kind"] = "angle_range";
          out["joint"] = data::to_string(k.joint);
          out["ranges"] = ranges_json(k.ranges);
        } else {
          out["kind"] = "time_range";
          out["ranges"] = ranges_json(k.ranges);
        }
      },
      b.kind);
  return out;
}

json to_json(const select::BrushSet& s) {
  json brushes = json::array();
  for (const auto& b : s.brushes) brushes.push_back(to_json(b));
  return {{"combine", select::to_string(s.combine)}, {"brushes", brushes}};
}

select::Brush brush_from_json(const json& j) {
  select::Brush b;
  b.id = get<std::string>(j, "id");
  b.active = j.contains("active") ? get<bool>(j, "active") : true;
  const auto kind = get<std::string>(j, "kind");
  if (kind == "score_bin") {
    select::ScoreBinBrush k;
    k.table = table_field(j);
    k.side = side_field(j);
    k.level = get<int>(j, "level");
    k.attribute = get<std::string>(j, "attribute");
    k.bins = get<std::vector<int>>(j, "bins");
    if (j.contains("parent_bins")) k.parent_bins = get<std::vector<int>>(j, "parent_bins");
    b.kind = std::move(k);
  } else if (kind == "heatmap_cell") {
    select::HeatmapCellBrush k;
    k.table = table_field(j);
    k.side = side_field(j);
    const auto& cells = field(j, "cells");
    if (!cells.is_array()) bad("cells", "cells must be an array");
    for (const auto& c : cells) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
        bad("cells", "each cell is [row, col]");
      }
      k.cells.emplace_back(c[0].get<int>(), c[1].get<int>());
    }
    b.kind = std::move(k);
  } else if (kind == "angle_range") {
    select::AngleRangeBrush k;
    const auto joint = data::parse_joint(get<std::string>(j, "joint"));
    if (!joint) bad("joint", "unknown joint");
    k.joint = *joint;
    k.ranges = ranges_field(j);
    b.kind = std::move(k);
  } else if (kind == "time_range") {
    b.kind = select::TimeRangeBrush{ranges_field(j)};
  } else {
    bad("kind", "unknown brush kind " + kind);
  }
  return b;
}

select::BrushSet brush_set_from_json(const json& j) {
  select::BrushSet s;
  if (j.is_object() && j.contains("combine")) {
    const auto c = select::parse_combine(get<std::string>(j, "combine"));
    if (!c) bad("combine", "combine is intersection or union");
    s.combine = *c;
  }
  const auto& brushes = field(j, "brushes");
  if (!brushes.is_array()) bad("brushes", "brushes must be an array");
  for (const auto& b : brushes) s.brushes.push_back(brush_from_json(b));
  return s;
}

}  // namespace ergo::service
