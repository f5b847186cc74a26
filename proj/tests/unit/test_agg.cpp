#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ergo/agg/gauge.hpp"
#include "ergo/agg/representatives.hpp"
#include "ergo/agg/table_aggregate.hpp"
#include "ergo/agg/timeline.hpp"
#include "ergo/error.hpp"
#include "random_data.hpp"
#include "brush_oracle.hpp"

using namespace ergo;
using namespace ergo::agg;
using data::BodyPart;
using data::JointId;
using data::Side;
using reba::RiskClass;
using reba::TableId;

namespace {

const JointId kNeck{BodyPart::neck, Side::center};
const JointId kTrunk{BodyPart::trunk, Side::center};
const JointId kElbowR{BodyPart::lower_arm, Side::right};
const JointId kWristR{BodyPart::wrist, Side::right};

data::FrameRecord neutral(std::uint32_t i, double t) {
  data::FrameRecord f;
  f.frame_index = i;
  f.timestamp_s = t;
  for (auto j : data::kAllJoints) f.angles[j] = 0.0;
  f.angles[kNeck] = 10.0;
  f.angles[JointId{BodyPart::lower_arm, Side::left}] = 80.0;
  f.angles[kElbowR] = 80.0;
  f.image_ref = "f" + std::to_string(i) + ".png";
  return f;
}

reba::ScoredDataset score(std::vector<data::FrameRecord> frames, double fps = 30.0) {
  return reba::score_dataset(data::Dataset("t", std::move(frames), fps), reba::RebaAsset::standard());
}

reba::ScoredDataset random_scored(std::mt19937_64& rng, std::size_t n) {
  const auto ds = testdata::with_random_exclusions(testdata::random_dataset(rng, n), rng, 0.1);
  return reba::score_dataset(ds, reba::RebaAsset::standard());
}

void check_conservation(const TableAggregate& t) {
  for (const auto* h : {&t.horizontal, &t.vertical}) {
    REQUIRE_FALSE(h->levels.empty());
    REQUIRE(h->levels[0].histograms.size() == 1);
    CHECK(h->levels[0].histograms[0].total() == t.n);
    for (std::size_t k = 1; k < h->levels.size(); ++k) {
      const auto& parent = h->levels[k - 1];
      const auto& level = h->levels[k];
      std::uint64_t sum = 0;
      std::size_t child = 0;
      for (const auto& p : parent.histograms) {
        for (auto bin : p.bin_counts) {
          REQUIRE(child < level.histograms.size());
          CHECK(level.histograms[child].total() == bin);
          sum += level.histograms[child].total();
          ++child;
        }
      }
      CHECK(child == level.histograms.size());
      CHECK(sum == t.n);
    }
  }
  CHECK(t.heatmap.total() == t.n);
}

}  // namespace

TEST_CASE("single frame concentrates everything") {
  const auto s = score({neutral(0, 0.0)});
  const auto t = table_aggregate(s, reba::BodySide::left, TableId::A);
  CHECK(t.n == 1);
  const auto& bins = t.horizontal.levels[0].histograms[0].bin_counts;
  CHECK(std::count_if(bins.begin(), bins.end(), [](auto c) { return c != 0; }) == 1);
  CHECK(std::count(t.heatmap.cell_counts.begin(), t.heatmap.cell_counts.end(), 1u) == 1);
  CHECK(t.heatmap.total() == 1);
}

TEST_CASE("neck split 3/2") {
  std::vector<data::FrameRecord> frames;
  for (std::uint32_t i = 0; i < 5; ++i) {
    auto f = neutral(i, i / 30.0);
    f.angles[kNeck] = i < 3 ? 10.0 : 25.0;
    frames.push_back(f);
  }
  const auto t = table_aggregate(score(frames), reba::BodySide::left, TableId::A);
  CHECK(t.horizontal.levels[0].attribute == "neck");
  CHECK(t.horizontal.levels[0].histograms[0].bin_counts == std::vector<std::uint64_t>{3, 2, 0});
  CHECK(t.horizontal.levels[1].attribute == "legs");
  CHECK(t.horizontal.levels[1].histograms.size() == 3);
  CHECK(t.horizontal.levels[1].histograms[1].parent_bins == std::vector<int>{2});
  CHECK(t.vertical.levels[0].attribute == "trunk");
  check_conservation(t);
}

TEST_CASE("layouts and cell scores") {
  const auto s = score({neutral(0, 0.0)});
  struct Shape {
    TableId id;
    int rows, cols;
  };
  for (auto [id, rows, cols] : {Shape{TableId::A, 5, 12}, Shape{TableId::B, 6, 6}, Shape{TableId::C, 12, 12}}) {
    const auto t = table_aggregate(s, reba::BodySide::right, id);
    CHECK(t.heatmap.rows == rows);
    CHECK(t.heatmap.cols == cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        int want = 0;
        if (id == TableId::A) want = oracle::kTableA[r][c / 4][c % 4];
        if (id == TableId::B) want = oracle::kTableB[r][c / 3][c % 3];
        if (id == TableId::C) want = oracle::kTableC[r][c];
        CHECK(t.heatmap.score(r, c) == want);
      }
    }
  }
}

TEST_CASE("heatmap and histograms match a brute-force count") {
  std::mt19937_64 rng(41);
  const auto s = random_scored(rng, 2000);
  for (auto side : data::kBothSides) {
    for (auto id : reba::kAllTables) {
      const auto t = table_aggregate(s, side, id);
      check_conservation(t);
      std::vector<std::uint64_t> cells(t.heatmap.cell_counts.size(), 0);
      std::vector<std::uint64_t> level1(t.horizontal.levels[0].cardinality, 0);
      for (auto idx : s.frame_indices) {
        const auto w = oracle::evaluate(s.dataset.frame(idx), side == reba::BodySide::right);
        const auto [r, c] = oracle::cell_of(w, id);
        ++cells[static_cast<std::size_t>(r * t.heatmap.cols + c)];
        const int first = id == TableId::A ? w.neck : id == TableId::B ? w.lower : std::min(w.score_b, 12);
        ++level1[static_cast<std::size_t>(first - 1)];
      }
      CHECK(t.heatmap.cell_counts == cells);
      CHECK(t.horizontal.levels[0].histograms[0].bin_counts == level1);
      CHECK(t.n == s.rows());
    }
  }
}

TEST_CASE("selection never grows counts") {
  std::mt19937_64 rng(43);
  const auto s = random_scored(rng, 1500);
  std::vector<std::uint32_t> pick;
  for (auto idx : s.frame_indices)
    if (rng() % 3 == 0) pick.push_back(idx);
  pick.push_back(999999);  // unknown ids are ignored
  const select::FrameIdSet sel(pick);
  for (auto id : reba::kAllTables) {
    const auto full = table_aggregate(s, reba::BodySide::left, id);
    const auto part = table_aggregate(s, reba::BodySide::left, id, sel);
    check_conservation(part);
    CHECK(part.n == sel.size() - 1);
    for (std::size_t i = 0; i < full.heatmap.cell_counts.size(); ++i)
      CHECK(part.heatmap.cell_counts[i] <= full.heatmap.cell_counts[i]);
    for (std::size_t k = 0; k < full.horizontal.levels.size(); ++k)
      for (std::size_t h = 0; h < full.horizontal.levels[k].histograms.size(); ++h)
        for (std::size_t b = 0; b < full.horizontal.levels[k].histograms[h].bin_counts.size(); ++b)
          CHECK(part.horizontal.levels[k].histograms[h].bin_counts[b] <=
                full.horizontal.levels[k].histograms[h].bin_counts[b]);
  }
  const auto empty = table_aggregate(s, reba::BodySide::left, TableId::C, select::FrameIdSet{});
  CHECK(empty.n == 0);
  CHECK(empty.heatmap.total() == 0);
}

TEST_CASE("unknown table") {
  const auto s = score({neutral(0, 0.0)});
  try {
    table_aggregate(s, reba::BodySide::left, static_cast<TableId>(7));
    FAIL("expected UnknownTable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownTable);
  }
}

TEST_CASE("gauge distribution") {
  SUBCASE("constant safe angle") {
    std::vector<data::FrameRecord> frames;
    for (std::uint32_t i = 0; i < 50; ++i) frames.push_back(neutral(i, i / 30.0));
    const auto g = gauge_distribution(score(frames), kElbowR);
    CHECK(g.entries.size() == 50);
    CHECK(std::count_if(g.density_bins.begin(), g.density_bins.end(), [](auto c) { return c != 0; }) == 1);
    CHECK(g.density_bins[g.bin_of(80.0)] == 50);
    for (const auto& e : g.entries) CHECK(e.risk_class == RiskClass::low);
    CHECK(g.class_counts[0] == 50);
    CHECK(g.valid_range.min_deg == 0.0);
    CHECK(g.valid_range.max_deg == 180.0);
    CHECK(g.density_bins.size() == 180);
  }
  SUBCASE("inside and outside the safe band") {
    auto a = neutral(0, 0.0);
    auto b = neutral(1, 0.1);
    a.angles[kElbowR] = 50.0;
    const auto g = gauge_distribution(score({a, b}), kElbowR);
    REQUIRE(g.entries.size() == 2);
    CHECK(g.entries[0].risk_class != g.entries[1].risk_class);
    CHECK(g.entries[0].risk_class == RiskClass::high);
    CHECK(g.entries[1].risk_class == RiskClass::low);
  }
  SUBCASE("same angle, different joint score") {
    auto a = neutral(0, 0.0);
    auto b = neutral(1, 0.1);
    a.angles[kWristR] = 20.0;
    b.angles[kWristR] = 20.0;
    b.modifiers[kWristR].deviated = true;
    const auto g = gauge_distribution(score({a, b}), kWristR);
    REQUIRE(g.entries.size() == 2);
    CHECK(g.entries[0].angle_deg == g.entries[1].angle_deg);
    CHECK(g.entries[0].joint_score == 2);
    CHECK(g.entries[1].joint_score == 3);
    CHECK(g.entries[0].risk_class == RiskClass::medium);
    CHECK(g.entries[1].risk_class == RiskClass::high);
  }
  SUBCASE("monochrome variant") {
    const auto g = gauge_distribution(score({neutral(0, 0.0)}), kNeck, std::nullopt, false);
    CHECK_FALSE(g.colored);
  }
  SUBCASE("unknown joint") {
    CHECK_THROWS_AS(gauge_distribution(score({neutral(0, 0.0)}), JointId{BodyPart::neck, Side::left}), Error);
  }
}

TEST_CASE("gauge entries agree with joint scores on random data") {
  std::mt19937_64 rng(47);
  const auto s = random_scored(rng, 1000);
  const auto& asset = *s.asset;
  for (auto j : data::kAllJoints) {
    const auto g = gauge_distribution(s, j);
    REQUIRE(g.entries.size() == s.rows());
    std::uint64_t binned = 0;
    for (auto c : g.density_bins) binned += c;
    CHECK(binned == s.rows());
    for (std::size_t r = 0; r < s.rows(); ++r) {
      const auto& e = g.entries[r];
      CHECK(g.valid_range.contains(e.angle_deg));
      CHECK(e.joint_score == s.joint_score(j, r));
      CHECK(e.risk_class == asset.risk_class(j.part, e.joint_score));
      const auto& bin_lo = g.bin_origin_deg + static_cast<double>(g.bin_of(e.angle_deg));
      CHECK(e.angle_deg >= bin_lo);
      CHECK((e.angle_deg < bin_lo + 1.0 || e.angle_deg == g.valid_range.max_deg));
    }
  }
}

namespace {

reba::ScoredDataset sine(std::size_t n, double fps, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-noise, noise);
  std::vector<data::FrameRecord> frames;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / fps;
    auto f = neutral(static_cast<std::uint32_t>(i), t);
    f.angles[kTrunk] = 40.0 + 30.0 * std::sin(2.0 * std::numbers::pi * t / 7.0) + u(rng);
    f.angles[kElbowR] = 80.0 + 40.0 * std::sin(2.0 * std::numbers::pi * t / 3.0) + u(rng);
    frames.push_back(f);
  }
  return score(std::move(frames), fps);
}

void check_extrema(const reba::ScoredDataset& s, const std::vector<DownsampledSeries>& out, double t0, double t1) {
  for (const auto& series : out) {
    const auto& col = s.angles[series.joint];
    REQUIRE_FALSE(series.buckets.empty());
    CHECK(series.buckets.front().t_start == t0);
    CHECK(series.buckets.back().t_end == t1);
    std::size_t r = static_cast<std::size_t>(s.row_of(series.buckets.front().first_frame));
    for (std::size_t b = 0; b < series.buckets.size(); ++b) {
      const auto& k = series.buckets[b];
      if (b > 0) CHECK(k.t_start == series.buckets[b - 1].t_end);
      CHECK(k.t_start < k.t_end);
      double lo = col[r], hi = col[r];
      for (std::size_t i = r; i < r + k.count; ++i) {
        CHECK(s.timestamps[i] >= k.t_start);
        CHECK(s.timestamps[i] < k.t_end);
        lo = std::min(lo, col[i]);
        hi = std::max(hi, col[i]);
      }
      CHECK(k.min_deg == lo);
      CHECK(k.max_deg == hi);
      CHECK(k.first_deg == col[r]);
      CHECK(k.last_deg == col[r + k.count - 1]);
      CHECK(k.min_deg <= k.first_deg);
      CHECK(k.first_deg <= k.max_deg);
      CHECK(k.min_deg <= k.last_deg);
      CHECK(k.last_deg <= k.max_deg);
      r += k.count;
    }
  }
}

}  // namespace

TEST_CASE("timeline without decimation is lossless") {
  const auto s = sine(100, 30.0, 0.0, 1);
  const std::array<JointId, 1> joints = {kTrunk};
  const auto out = timeline_window(s, joints, 0.0, 100.0, 200);
  REQUIRE(out.size() == 1);
  CHECK(out[0].buckets.size() == 100);
  for (std::size_t i = 0; i < 100; ++i) {
    const auto& k = out[0].buckets[i];
    CHECK(k.count == 1);
    CHECK(k.min_deg == s.angles[kTrunk][i]);
    CHECK(k.max_deg == k.min_deg);
  }
  check_extrema(s, out, 0.0, 100.0);
}

TEST_CASE("decimation keeps brute-force extrema") {
  for (std::size_t factor : {10u, 30u}) {
    const auto s = sine(6000, 30.0, 2.0, factor);
    const double t0 = s.timestamps.front();
    const double t1 = s.timestamps.back() + 1.0;
    const std::array<JointId, 2> joints = {kTrunk, kElbowR};
    const auto out = timeline_window(s, joints, t0, t1, s.rows() / factor);
    for (const auto& series : out) CHECK(series.buckets.size() == s.rows() / factor);
    check_extrema(s, out, t0, t1);
  }
}

TEST_CASE("desk-scale window stays under the point budget") {
  const auto s = sine(15861, 30.0, 1.0, 5);
  const auto out = timeline_window(s, data::kAllJoints, 0.0, 1e6, 500);
  for (const auto& series : out) {
    CHECK(series.buckets.size() <= 500);
    const auto& col = s.angles[series.joint];
    const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
    double bmin = 1e9, bmax = -1e9;
    for (const auto& k : series.buckets) {
      bmin = std::min(bmin, k.min_deg);
      bmax = std::max(bmax, k.max_deg);
    }
    CHECK(bmin == *mn);
    CHECK(bmax == *mx);
    CHECK(series.value_range.min_deg == *mn);
    CHECK(series.value_range.max_deg == *mx);
  }
}

TEST_CASE("timeline window arguments") {
  const auto s = sine(100, 30.0, 0.0, 1);
  const std::array<JointId, 1> joints = {kTrunk};
  try {
    timeline_window(s, joints, 50.0, 60.0, 10);
    FAIL("expected EmptyWindow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyWindow);
  }
  CHECK_THROWS_AS(timeline_window(s, joints, 1.0, 1.0, 10), Error);
  CHECK_THROWS_AS(timeline_window(s, joints, 0.0, 1.0, 1), Error);
  // A sub-window only covers its own samples.
  const auto out = timeline_window(s, joints, 1.0, 2.0, 500);
  std::uint32_t total = 0;
  for (const auto& k : out[0].buckets) total += k.count;
  CHECK(total == 30);
  CHECK(out[0].buckets.front().first_frame == 30);
}

TEST_CASE("timeline selected counts and limits") {
  const auto s = sine(300, 30.0, 0.0, 2);
  std::vector<std::uint32_t> even;
  for (std::uint32_t i = 0; i < 300; i += 2) even.push_back(i);
  const std::array<JointId, 1> joints = {kElbowR};
  const auto out = timeline_window(s, joints, 0.0, 10.0, 30, select::FrameIdSet(even));
  std::uint32_t sel = 0;
  for (const auto& k : out[0].buckets) {
    CHECK(k.selected <= k.count);
    sel += k.selected;
  }
  CHECK(sel == 150);
  const auto& limits = out[0].limits;
  REQUIRE(limits.size() == 2);
  CHECK(limits[0].angle_deg == 60.0);
  CHECK(limits[1].angle_deg == 100.0);
  CHECK(limits[0].risk_boundary);
  CHECK(limits[1].risk_boundary);
  const auto trunk = joint_limits(*s.asset, BodyPart::trunk);
  REQUIRE(trunk.size() == 5);
  CHECK(trunk[1].angle_deg == -5.0);
  CHECK(trunk[1].risk_boundary);
  CHECK_FALSE(trunk[0].risk_boundary);
}

TEST_CASE("representative frames") {
  auto posture = [](std::uint32_t i, bool risky) {
    auto f = neutral(i, i * 0.5);
    if (risky) {
      f.angles[kTrunk] = 70.0;
      f.angles[kNeck] = 25.0;
      f.angles[JointId{BodyPart::leg, Side::left}] = 45.0;
    }
    return f;
  };
  SUBCASE("median of three") {
    std::vector<data::FrameRecord> frames;
    for (std::uint32_t i = 0; i < 40; ++i) frames.push_back(posture(i, i == 10 || i == 20 || i == 30));
    const auto s = score(frames);
    const auto reps = representative_frames(s, TableId::A, reba::BodySide::left);
    CHECK(reps.at(6) == 20u);
    CHECK(reps.at(1).has_value());
  }
  SUBCASE("lower median of two") {
    std::vector<data::FrameRecord> frames;
    for (std::uint32_t i = 0; i < 10; ++i) frames.push_back(posture(i, i == 5 || i == 6));
    const auto reps = representative_frames(score(frames), TableId::A, reba::BodySide::left);
    CHECK(reps.at(6) == 5u);
  }
  SUBCASE("groups without images map to none") {
    std::vector<data::FrameRecord> frames;
    for (std::uint32_t i = 0; i < 10; ++i) {
      auto f = posture(i, i == 3);
      if (i == 3) f.image_ref.reset();
      frames.push_back(f);
    }
    const auto reps = representative_frames(score(frames), TableId::A, reba::BodySide::left);
    CHECK_FALSE(reps.at(6).has_value());
  }
  SUBCASE("every present score gets a deterministic pick") {
    std::mt19937_64 rng(53);
    const auto s = random_scored(rng, 800);
    for (auto id : reba::kAllTables) {
      const auto a = representative_frames(s, id, reba::BodySide::right);
      CHECK(a == representative_frames(s, id, reba::BodySide::right));
      std::map<int, std::vector<std::uint32_t>> groups;
      for (std::size_t r = 0; r < s.rows(); ++r) {
        const auto idx = s.frame_indices[r];
        const int g = group_score(s.side(reba::BodySide::right)[r], id);
        groups[g];
        if (s.dataset.frame(idx).image_ref) groups[g].push_back(idx);
      }
      CHECK(a.size() == groups.size());
      for (const auto& [g, members] : groups) {
        if (members.empty()) {
          CHECK_FALSE(a.at(g).has_value());
        } else {
          CHECK(a.at(g) == members[(members.size() - 1) / 2]);
        }
      }
    }
  }
}
