#pragma once

#include <random>
#include <string>

#include "ergo/data/validate.hpp"
#include "ergo/select/brush.hpp"

namespace testdata {

inline ergo::select::Brush random_brush(std::mt19937_64& rng, const std::string& id, double duration_s) {
  using namespace ergo::select;
  using ergo::reba::TableId;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const auto side = pick(0, 1) ? ergo::data::BodySide::right : ergo::data::BodySide::left;
  const auto table = static_cast<TableId>(pick(0, 2));

  Brush b;
  b.id = id;
  b.active = unit(rng) < 0.9;
  switch (pick(0, 3)) {
    case 0: {
      struct Attr {
        TableId table;
        const char* name;
        int level;
        int card;
        int parent_card;
      };
      static const Attr attrs[] = {{TableId::A, "neck", 1, 3, 0},      {TableId::A, "legs", 2, 4, 3},
                                   {TableId::A, "trunk", 1, 5, 0},     {TableId::B, "lower_arm", 1, 2, 0},
                                   {TableId::B, "wrist", 2, 3, 2},     {TableId::B, "upper_arm", 1, 6, 0},
                                   {TableId::C, "score_a", 1, 12, 0},  {TableId::C, "score_b", 1, 12, 0}};
      const auto& a = attrs[pick(0, 7)];
      ScoreBinBrush k{a.table, side, a.level, a.name, {}, {}};
      const int nbins = pick(0, 3);
      for (int i = 0; i < nbins; ++i) k.bins.push_back(pick(1, a.card));
      if (a.parent_card > 0 && pick(0, 1)) k.parent_bins.push_back(pick(1, a.parent_card));
      b.kind = k;
      break;
    }
    case 1: {
      const int rows = table == TableId::A ? 5 : table == TableId::B ? 6 : 12;
      const int cols = table == TableId::A ? 12 : table == TableId::B ? 6 : 12;
      HeatmapCellBrush k{table, side, {}};
      const int n = pick(1, 6);
      for (int i = 0; i < n; ++i) k.cells.emplace_back(pick(0, rows - 1), pick(0, cols - 1));
      b.kind = k;
      break;
    }
    case 2: {
      const auto joint = ergo::data::kAllJoints[static_cast<std::size_t>(pick(0, 9))];
      const auto r = ergo::data::MotionRanges::defaults().joints[joint];
      AngleRangeBrush k{joint, {}};
      const int n = pick(0, 3);
      for (int i = 0; i < n; ++i) {
        double lo = r.min_deg + unit(rng) * r.width();
        double hi = r.min_deg + unit(rng) * r.width();
        if (lo > hi) std::swap(lo, hi);
        if (unit(rng) < 0.1) hi = lo;
        k.ranges.push_back({lo, hi});
      }
      b.kind = k;
      break;
    }
    default: {
      TimeRangeBrush k;
      const int n = pick(1, 3);
      for (int i = 0; i < n; ++i) {
        double lo = unit(rng) * duration_s;
        double hi = unit(rng) * duration_s;
        if (lo > hi) std::swap(lo, hi);
        k.ranges.push_back({lo, hi});
      }
      b.kind = k;
      break;
    }
  }
  return b;
}

inline ergo::select::BrushSet random_brush_set(std::mt19937_64& rng, double duration_s) {
  ergo::select::BrushSet set;
  set.combine = std::bernoulli_distribution(0.5)(rng) ? ergo::select::Combine::union_
                                                      : ergo::select::Combine::intersection;
  const int n = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < n; ++i) set.brushes.push_back(random_brush(rng, "b" + std::to_string(i), duration_s));
  return set;
}

}  // namespace testdata
