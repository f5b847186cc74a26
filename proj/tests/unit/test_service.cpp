#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "ergo/agg/gauge.hpp"
#include "ergo/agg/representatives.hpp"
#include "ergo/agg/timeline.hpp"
#include "ergo/error.hpp"
#include "ergo/select/linked.hpp"
#include "ergo/service/codec.hpp"
#include "ergo/service/pipeline.hpp"
#include "ergo/service/report.hpp"
#include "ergo/service/server.hpp"
#include "ergo/service/session.hpp"
#include "ergo/service/synthetic.hpp"
#include "random_data.hpp"
#include "temp_dir.hpp"
#include "worksheet.hpp"

using namespace ergo;
using namespace ergo::service;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = ERGO_SOURCE_DIR;
const fs::path kCli = ERGO_CLI;

SyntheticSpec painting_spec() {
  std::ifstream in(kSource / "data" / "painting_spec.json");
  return synthetic_spec_from_json(json::parse(in));
}

const reba::ScoredDataset& painting() {
  static const auto scored =
      run_pipeline(generate_synthetic(painting_spec()), reba::RebaAsset::standard()).scored;
  return scored;
}

int run(const std::string& args) {
  const int rc = std::system((kCli.string() + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("report totals match a brute-force recount") {
  const auto& s = painting();
  const auto r = build_report(s);
  CHECK(r.dataset_id == "painting");
  CHECK(r.total_frames == 3600);
  CHECK(r.excluded_frames == 1);
  CHECK(r.included_frames == s.rows());
  CHECK(r.included_frames + r.excluded_frames + r.unscored_frames == r.total_frames);
  std::uint64_t pooled = 0;
  for (auto c : r.action_levels) pooled += c;
  CHECK(pooled == r.included_frames * 2);

  std::array<std::uint64_t, 5> levels{};
  std::array<std::array<std::uint64_t, 15>, 2> hist{};
  for (std::size_t row = 0; row < s.rows(); ++row) {
    const auto& f = s.dataset.frame(s.frame_indices[row]);
    for (int side = 0; side < 2; ++side) {
      const auto w = oracle::evaluate(f, side == 1, s.sides[side][row].activity_score);
      ++levels[static_cast<std::size_t>(w.action)];
      ++hist[side][static_cast<std::size_t>(w.grand - 1)];
    }
  }
  CHECK(r.action_levels == levels);
  CHECK(r.grand_histogram == hist);

  REQUIRE(r.worst.size() == kDefaultWorstK);
  for (std::size_t i = 1; i < r.worst.size(); ++i) {
    const auto& a = r.worst[i - 1];
    const auto& b = r.worst[i];
    CHECK((a.grand > b.grand || (a.grand == b.grand && (a.frame_index < b.frame_index ||
                                                         (a.frame_index == b.frame_index && a.side < b.side)))));
  }
  int top = 0;
  for (int g = 15; g >= 1 && top == 0; --g)
    if (hist[0][g - 1] + hist[1][g - 1] > 0) top = g;
  CHECK(r.worst.front().grand == top);
  CHECK(r.asset_checksum == reba::RebaAsset::standard().checksum);
}

TEST_CASE("report survives json and scored csv round trips") {
  const auto r = build_report(painting());
  const auto back = report_from_json(json::parse(to_json(r).dump()));
  CHECK(to_json(back) == to_json(r));

  std::stringstream csv;
  write_scored_csv(csv, painting());
  auto again = report_from_scored_csv(csv);
  again.runtime_ms = r.runtime_ms;
  // The scored CSV keeps four decimals.
  REQUIRE(again.worst.size() == r.worst.size());
  for (std::size_t i = 0; i < r.worst.size(); ++i) {
    CHECK(std::abs(again.worst[i].timestamp_s - r.worst[i].timestamp_s) <= 5e-5);
    again.worst[i].timestamp_s = r.worst[i].timestamp_s;
  }
  CHECK(to_json(again) == to_json(r));

  std::stringstream bad("frame_index,timestamp_s\n1,2\n");
  CHECK_THROWS_AS(report_from_scored_csv(bad), SchemaMismatch);
}

TEST_CASE("synthetic generator") {
  SUBCASE("zero amplitude is constant") {
    SyntheticSpec spec;
    spec.joints = {data::JointId{data::BodyPart::trunk, data::Side::center}};
    spec.wave = {25.0, 0.0, 5.0, 0.0, 0.0};
    const auto ds = generate_synthetic(spec);
    CHECK(ds.size() == 1800);
    for (const auto& f : ds.frames()) CHECK(f.angles[spec.joints[0]] == 25.0);
  }
  SUBCASE("sine extremes and timing") {
    SyntheticSpec spec;
    const data::JointId knee{data::BodyPart::leg, data::Side::left};
    spec.joints = {knee};
    spec.wave = {60.0, 30.0, 4.0, 0.0, 0.0};
    const auto ds = generate_synthetic(spec);
    REQUIRE(ds.size() == 1800);
    double lo = 1e9, hi = -1e9;
    for (const auto& f : ds.frames()) {
      CHECK(f.timestamp_s == doctest::Approx(f.frame_index / 30.0).epsilon(1e-12));
      const double want = 60.0 + 30.0 * std::sin(2.0 * std::numbers::pi * f.timestamp_s / 4.0);
      CHECK(f.angles[knee] == doctest::Approx(want).epsilon(1e-12));
      lo = std::min(lo, f.angles[knee]);
      hi = std::max(hi, f.angles[knee]);
    }
    CHECK(lo == doctest::Approx(30.0).epsilon(1e-9));
    CHECK(hi == doctest::Approx(90.0).epsilon(1e-9));
    for (const auto& f : ds.frames()) {
      CHECK(f.angles[data::JointId{data::BodyPart::neck, data::Side::center}] ==
            neutral_angle_deg(data::BodyPart::neck));
    }
  }
  SUBCASE("seeded and deterministic") {
    auto spec = painting_spec();
    const auto a = generate_synthetic(spec);
    const auto b = generate_synthetic(spec);
    CHECK(std::equal(a.frames().begin(), a.frames().end(), b.frames().begin(), b.frames().end()));
    spec.seed = 8;
    const auto c = generate_synthetic(spec);
    CHECK_FALSE(std::equal(a.frames().begin(), a.frames().end(), c.frames().begin(), c.frames().end()));
  }
  SUBCASE("injected spike is flagged") {
    const auto& s = painting();
    REQUIRE(s.dataset.excluded().size() == 1);
    const auto idx = *s.dataset.excluded().begin();
    CHECK(idx == 900);
    CHECK(s.dataset.frame(idx).angles[data::JointId{data::BodyPart::lower_arm, data::Side::right}] == 179.0);
  }
  SUBCASE("invalid specs") {
    SyntheticSpec spec;
    spec.fps = 0;
    CHECK_THROWS_AS(spec.validate(), Error);
    spec = {};
    spec.duration_s = -1;
    CHECK_THROWS_AS(generate_synthetic(spec), Error);
    CHECK_THROWS_AS(synthetic_spec_from_json(json::parse(R"({"joints":["elbow"]})")), Error);
    CHECK_THROWS_AS(synthetic_spec_from_json(json::parse(R"({"coupling":"sticky"})")), Error);
    CHECK_THROWS_AS(synthetic_spec_from_json(json::parse(R"({"fps":"fast"})")), Error);
  }
  SUBCASE("written recordings load back") {
    testdata::TempDir dir;
    const auto ds = generate_synthetic(painting_spec());
    const auto manifest = write_synthetic(ds, dir.path());
    const auto loaded = data::load_dataset(manifest);
    REQUIRE(loaded.dataset.size() == ds.size());
    CHECK(loaded.dataset.id == "painting");
    for (std::uint32_t i = 0; i < ds.size(); i += 97) {
      const auto& a = loaded.dataset.frame(i);
      const auto& b = ds.frame(i);
      CHECK(std::abs(a.timestamp_s - b.timestamp_s) <= 5e-5);
      for (auto j : data::kAllJoints) CHECK(std::abs(a.angles[j] - b.angles[j]) <= 5e-5);
      CHECK(a.image_ref == b.image_ref);
      CHECK(a.coupling == b.coupling);
      CHECK(a.load_kg == b.load_kg);
    }
    // Serialization is a fixed point after one pass.
    std::ostringstream once, twice;
    data::write_frames_csv(once, loaded.dataset);
    const auto again = write_synthetic(loaded.dataset, dir / "again");
    data::write_frames_csv(twice, data::load_dataset(again).dataset);
    CHECK(once.str() == twice.str());
  }
}

TEST_CASE("session store") {
  testdata::TempDir dir;
  const auto file = dir / "sessions.json";
  select::BrushSet set{{{"t", select::TimeRangeBrush{{{1.0, 2.0}}}}}, select::Combine::union_};
  std::string id;
  {
    SessionStore store(file);
    const auto a = store.create("painting");
    const auto b = store.create("painting");
    CHECK(a.session_id != b.session_id);
    CHECK(a.dataset_id == "painting");
    CHECK(a.created_at.size() == 20);
    CHECK(a.created_at.back() == 'Z');
    CHECK(store.set_brushes(a.session_id, set));
    CHECK_FALSE(store.set_brushes("nope", set));
    CHECK(store.get(a.session_id)->brush_set == set);
    CHECK(store.get(b.session_id)->brush_set.brushes.empty());
    CHECK_FALSE(store.get("nope"));
    id = a.session_id;
  }
  SessionStore reloaded(file);
  reloaded.load();
  CHECK(reloaded.size() == 2);
  CHECK(reloaded.get(id)->brush_set == set);
  CHECK(reloaded.create("x").session_id != id);

  SessionStore shared;
  std::vector<std::jthread> workers;
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&shared, &set] {
      for (int i = 0; i < 50; ++i) {
        const auto s = shared.create("d");
        shared.set_brushes(s.session_id, set);
      }
    });
  }
  workers.clear();
  CHECK(shared.size() == 400);
}

namespace {

struct Server {
  testdata::TempDir dir;
  Catalog catalog;
  SessionStore sessions;
  httplib::Server http;
  std::thread thread;
  int port = 0;

  Server() {
    write_synthetic(generate_synthetic(painting_spec()), dir.path());
    auto small = painting_spec();
    small.id = "small";
    small.duration_s = 5;
    small.spikes.clear();
    small.images = false;
    write_synthetic(generate_synthetic(small), dir.path());
    fs::create_directories(dir / "images");
    std::ofstream(dir / "images" / "frame_000010.png", std::ios::binary) << "PNGDATA";
    REQUIRE(catalog.load_directory(dir.path(), reba::RebaAsset::standard()).empty());
    mount_api(http, catalog, sessions);
    port = http.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { http.listen_after_bind(); });
    http.wait_until_ready();
  }
  ~Server() {
    http.stop();
    thread.join();
  }

  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
};

json body(const httplib::Result& r) {
  REQUIRE(r);
  return json::parse(r->body);
}

}  // namespace

TEST_CASE("http api") {
  Server srv;
  auto cli = srv.client();
  const auto d = srv.catalog.find("painting");
  REQUIRE(d);

  SUBCASE("datasets and summary") {
    const auto list = body(cli.Get("/datasets"));
    REQUIRE(list.size() == 2);
    CHECK(list[0]["id"] == "painting");
    CHECK(list[0]["included"] == d->rows());
    auto summary = body(cli.Get("/datasets/painting/summary"));
    auto want = to_json(build_report(*d));
    summary.erase("runtime_ms");
    want.erase("runtime_ms");
    CHECK(summary == want);
  }

  SUBCASE("full-scope views equal the library") {
    CHECK(body(cli.Get("/datasets/painting/tables/B?side=right")) ==
          json::parse(to_json(agg::table_aggregate(*d, reba::BodySide::right, reba::TableId::B)).dump()));
    const data::JointId elbow{data::BodyPart::lower_arm, data::Side::right};
    CHECK(body(cli.Get("/datasets/painting/gauge/lower_arm_right")) ==
          json::parse(to_json(agg::gauge_distribution(*d, elbow)).dump()));
    const auto slim = body(cli.Get("/datasets/painting/gauge/lower_arm_right?entries=0&colored=0"));
    CHECK_FALSE(slim.contains("entries"));
    CHECK(slim["colored"] == false);
    const std::array<data::JointId, 1> joints = {elbow};
    CHECK(body(cli.Get("/datasets/painting/timeline?joints=lower_arm_right&t0=0&t1=60&max_points=120")) ==
          json::parse(to_json(agg::timeline_window(*d, joints, 0.0, 60.0, 120)).dump()));
    const auto all = body(cli.Get("/datasets/painting/timeline?max_points=100"));
    CHECK(all.size() == 10);
    for (const auto& s : all) CHECK(s["buckets"].size() <= 100);
  }

  SUBCASE("representatives and images") {
    const auto reps = body(cli.Get("/datasets/painting/representatives?table=C&side=right"));
    const auto want = agg::representative_frames(*d, reba::TableId::C, reba::BodySide::right);
    REQUIRE(reps["groups"].size() == want.size());
    for (const auto& g : reps["groups"]) {
      const auto pick = want.at(g["score"].get<int>());
      REQUIRE(pick);
      CHECK(g["frame_index"] == *pick);
      CHECK(g["image_ref"] == *d->dataset.frame(*pick).image_ref);
    }
    const auto img = cli.Get("/datasets/painting/frames/10/image");
    REQUIRE(img);
    CHECK(img->status == 200);
    CHECK(img->body == "PNGDATA");
    CHECK(img->get_header_value("Content-Type") == "image/png");
    CHECK(cli.Get("/datasets/painting/frames/11/image")->status == 404);
    CHECK(cli.Get("/datasets/small/frames/1/image")->status == 404);
    CHECK(cli.Get("/datasets/painting/frames/99999/image")->status == 404);
    CHECK(cli.Get("/datasets/painting/frames/x/image")->status == 400);
  }

  SUBCASE("sessions scope every view") {
    const auto s1 = body(cli.Post("/sessions", R"({"dataset_id":"painting"})", "application/json"));
    const auto s2 = body(cli.Post("/sessions", R"({"dataset_id":"painting"})", "application/json"));
    const std::string id1 = s1["session_id"], id2 = s2["session_id"];
    CHECK(id1 != id2);
    const json brushes = {
        {"combine", "intersection"},
        {"brushes", {{{"id", "reach"}, {"kind", "angle_range"}, {"joint", "upper_arm_right"}, {"ranges", {{62, 66.8}}}},
                     {{"id", "early"}, {"kind", "time_range"}, {"ranges", {{0, 60}}}}}}};
    const auto put = cli.Put("/sessions/" + id1 + "/brushes", brushes.dump(), "application/json");
    REQUIRE(put);
    CHECK(put->status == 200);
    const auto set = brush_set_from_json(brushes);
    const auto ids = select::evaluate_composite(set, *d);
    CHECK(json::parse(put->body)["selected_total"] == ids.size());
    CHECK_FALSE(ids.empty());

    const auto sel = body(cli.Get("/sessions/" + id1 + "/selection?max_points=200"));
    CHECK(sel["frame_ids"] == to_json(ids));
    CHECK(sel["linked_counts"] == json::parse(to_json(select::linked_counts(ids, *d, 200)).dump()));

    CHECK(body(cli.Get("/datasets/painting/tables/A?session=" + id1)) ==
          json::parse(to_json(agg::table_aggregate(*d, reba::BodySide::left, reba::TableId::A, ids)).dump()));
    // The other session still sees everything.
    CHECK(body(cli.Get("/datasets/painting/tables/A?session=" + id2)) ==
          json::parse(to_json(agg::table_aggregate(*d, reba::BodySide::left, reba::TableId::A)).dump()));
    CHECK(body(cli.Get("/sessions/" + id2))["brush_set"]["brushes"].empty());
    CHECK(body(cli.Get("/sessions/" + id1))["brush_set"] == to_json(set));
    CHECK(body(cli.Get("/sessions/" + id2 + "/selection"))["frame_ids"].size() == d->rows());
  }

  SUBCASE("errors") {
    auto status = [](const httplib::Result& r) { return r ? r->status : -1; };
    CHECK(status(cli.Get("/datasets/nope/summary")) == 404);
    CHECK(status(cli.Get("/datasets/painting/tables/D")) == 400);
    CHECK(status(cli.Get("/datasets/painting/tables/A?side=middle")) == 400);
    CHECK(status(cli.Get("/datasets/painting/gauge/elbow")) == 400);
    CHECK(status(cli.Get("/datasets/painting/timeline?t0=5&t1=1")) == 400);
    CHECK(status(cli.Get("/datasets/painting/timeline?max_points=abc")) == 400);
    CHECK(status(cli.Get("/datasets/painting/timeline?t0=500&t1=600")) == 400);
    CHECK(status(cli.Get("/datasets/painting/tables/A?session=s999")) == 404);
    CHECK(status(cli.Get("/sessions/s999")) == 404);
    CHECK(status(cli.Post("/sessions", R"({"dataset_id":"nope"})", "application/json")) == 404);
    CHECK(status(cli.Post("/sessions", "{", "application/json")) == 400);
    CHECK(status(cli.Post("/sessions", "[]", "application/json")) == 400);
    const auto s = body(cli.Post("/sessions", R"({"dataset_id":"small"})", "application/json"));
    const std::string id = s["session_id"];
    CHECK(status(cli.Get("/datasets/painting/tables/A?session=" + id)) == 400);
    const auto bad = cli.Put("/sessions/" + id + "/brushes",
                             R"({"brushes":[{"id":"x","kind":"heatmap_cell","table":"A","side":"left","cells":[[9,0]]}]})",
                             "application/json");
    REQUIRE(bad);
    CHECK(bad->status == 400);
    CHECK(json::parse(bad->body).contains("error"));
    CHECK(status(cli.Put("/sessions/s999/brushes", R"({"brushes":[]})", "application/json")) == 404);
    CHECK(status(cli.Get("/sessions/" + id + "/selection?max_points=1")) == 400);
  }
}

TEST_CASE("command line") {
  testdata::TempDir dir;
  const auto manifest = write_synthetic(generate_synthetic(painting_spec()), dir.path());
  const auto out = dir / "out";

  CHECK(run("score " + manifest.string() + " --out " + out.string()) == 0);
  REQUIRE(fs::exists(out / "painting_scored.csv"));
  REQUIRE(fs::exists(out / "painting_report.json"));
  std::ifstream rj(out / "painting_report.json");
  auto report = json::parse(rj);
  auto want = to_json(build_report(run_pipeline(manifest, reba::RebaAsset::standard()).scored));
  report.erase("runtime_ms");
  want.erase("runtime_ms");
  CHECK(report == want);
  CHECK(run("report " + (out / "painting_scored.csv").string()) == 0);
  CHECK(run("report " + dir.write("junk.csv", "a,b\n1,2\n").string()) == 2);

  // A corrupted table cell is an asset invariant failure.
  auto text = std::string(reba::RebaAsset::standard_text());
  auto asset = json::parse(text);
  asset["tables"]["A"]["cells"][34] = 1;
  const auto bad_asset = dir.write("bad_asset.json", asset.dump());
  CHECK(run("score " + manifest.string() + " --asset " + bad_asset.string() + " --out " + out.string()) == 3);
  CHECK(run("score " + manifest.string() + " --asset " + dir.write("x.json", "{").string()) == 3);

  // Header mismatch is a validation error.
  const auto bad_csv = dir.write("broken_frames.csv", "frame_index,when\n0,0\n");
  const auto bad_manifest =
      dir.write("broken.json", R"({"id":"broken","frames_csv":"broken_frames.csv","fps":30})");
  CHECK(run("score " + bad_manifest.string() + " --out " + out.string()) == 2);
  CHECK(run("score " + (dir / "missing.json").string()) == 2);

  // An empty recording scores to an empty report.
  std::ostringstream header;
  data::write_frames_csv(header, data::Dataset("empty", {}, 30.0));
  dir.write("empty_frames.csv", header.str());
  const auto empty = dir.write("empty.json", R"({"id":"empty","frames_csv":"empty_frames.csv","fps":30})");
  CHECK(run("score " + empty.string() + " --out " + out.string()) == 0);
  std::ifstream ej(out / "empty_report.json");
  const auto er = json::parse(ej);
  CHECK(er["frames"]["included"] == 0);
  CHECK(er["frames"]["total"] == 0);

  CHECK(run("gen " + (kSource / "data" / "painting_spec.json").string() + " --out " + (dir / "gen").string()) == 0);
  CHECK(fs::exists(dir / "gen" / "painting.json"));
  CHECK(run("gen " + dir.write("bad_spec.json", R"({"fps":-1})").string()) == 2);
}
