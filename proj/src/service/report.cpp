#include "ergo/service/report.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "ergo/data/csv.hpp"
#include "ergo/error.hpp"

namespace ergo::service {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 20> kScoredColumns = {
    "frame_index", "timestamp_s", "side",     "neck",    "trunk",      "leg",      "upper_arm",
    "lower_arm",   "wrist",       "table_a",  "load",    "score_a",    "table_b",  "coupling",
    "score_b",     "table_c",     "activity", "grand",   "action_level", "image_ref"};

void add_row(Report& r, std::uint32_t frame, reba::BodySide side, double t, int grand, reba::ActionLevel level,
             std::optional<std::string> image) {
  ++r.grand_histogram[static_cast<std::size_t>(side)][static_cast<std::size_t>(grand - 1)];
  ++r.action_levels[static_cast<std::size_t>(level)];
  r.worst.push_back({frame, side, t, grand, level, std::move(image)});
}

void finish_worst(Report& r, std::size_t k) {
  auto by_risk = [](const WorstFrame& a, const WorstFrame& b) {
    if (a.grand != b.grand) return a.grand > b.grand;
    if (a.frame_index != b.frame_index) return a.frame_index < b.frame_index;
    return a.side < b.side;
  };
  const auto keep = std::min(k, r.worst.size());
  std::partial_sort(r.worst.begin(), r.worst.begin() + static_cast<std::ptrdiff_t>(keep), r.worst.end(), by_risk);
  r.worst.resize(keep);
}

}  // namespace

Report build_report(const reba::ScoredDataset& scored, std::size_t worst_k) {
  Report r;
  r.dataset_id = scored.dataset.id;
  r.total_frames = scored.dataset.size();
  r.excluded_frames = scored.dataset.excluded().size();
  r.unscored_frames = scored.diagnostics.size();
  r.included_frames = scored.rows();
  if (scored.asset) {
    r.asset_version = scored.asset->version;
    r.asset_checksum = scored.asset->checksum;
  }
  r.worst.reserve(scored.rows() * 2);
  for (std::size_t row = 0; row < scored.rows(); ++row) {
    const auto idx = scored.frame_indices[row];
    const auto& image = scored.dataset.frame(idx).image_ref;
    for (auto side : data::kBothSides) {
      const auto& s = scored.side(side)[row];
      add_row(r, idx, side, scored.timestamps[row], s.grand, s.action_level, image);
    }
  }
  finish_worst(r, worst_k);
  return r;
}

json to_json(const Report& r) {
  json worst = json::array();
  for (const auto& w : r.worst) {
    worst.push_back({{"frame_index", w.frame_index},
                     {"side", data::to_string(w.side)},
                     {"timestamp_s", w.timestamp_s},
                     {"grand", w.grand},
                     {"action_level", reba::to_string(w.action_level)},
                     {"image_ref", w.image_ref ? json(*w.image_ref) : json(nullptr)}});
  }
  json levels = json::object();
  for (std::size_t i = 0; i < r.action_levels.size(); ++i) {
    levels[std::string(reba::to_string(static_cast<reba::ActionLevel>(i)))] = r.action_levels[i];
  }
  return {{"dataset_id", r.dataset_id},
          {"frames",
           {{"total", r.total_frames},
            {"excluded", r.excluded_frames},
            {"unscored", r.unscored_frames},
            {"included", r.included_frames}}},
          {"grand_histogram", {{"left", r.grand_histogram[0]}, {"right", r.grand_histogram[1]}}},
          {"action_levels", levels},
          {"worst", worst},
          {"asset", {{"version", r.asset_version}, {"checksum", r.asset_checksum}}},
          {"runtime_ms", r.runtime_ms}};
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.dataset_id = j.at("dataset_id").get<std::string>();
    const auto& f = j.at("frames");
    r.total_frames = f.at("total").get<std::uint64_t>();
    r.excluded_frames = f.at("excluded").get<std::uint64_t>();
    r.unscored_frames = f.at("unscored").get<std::uint64_t>();
    r.included_frames = f.at("included").get<std::uint64_t>();
    r.grand_histogram[0] = j.at("grand_histogram").at("left").get<std::array<std::uint64_t, 15>>();
    r.grand_histogram[1] = j.at("grand_histogram").at("right").get<std::array<std::uint64_t, 15>>();
    for (const auto& [name, count] : j.at("action_levels").items()) {
      const auto level = reba::parse_action_level(name);
      if (!level) throw SchemaMismatch("action_levels", 0, "unknown action level " + name);
      r.action_levels[static_cast<std::size_t>(*level)] = count.get<std::uint64_t>();
    }
    for (const auto& w : j.at("worst")) {
      WorstFrame wf;
      wf.frame_index = w.at("frame_index").get<std::uint32_t>();
      wf.side = data::parse_body_side(w.at("side").get<std::string>()).value_or(reba::BodySide::left);
      wf.timestamp_s = w.at("timestamp_s").get<double>();
      wf.grand = w.at("grand").get<int>();
      wf.action_level = reba::parse_action_level(w.at("action_level").get<std::string>()).value_or(wf.action_level);
      if (!w.at("image_ref").is_null()) wf.image_ref = w.at("image_ref").get<std::string>();
      r.worst.push_back(std::move(wf));
    }
    r.asset_version = j.at("asset").at("version").get<std::string>();
    r.asset_checksum = j.at("asset").at("checksum").get<std::string>();
    r.runtime_ms = j.at("runtime_ms").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw SchemaMismatch("report", 0, e.what());
  }
}

void write_scored_csv(std::ostream& out, const reba::ScoredDataset& scored) {
  using data::csv::format_decimal;
  out << "# dataset=" << scored.dataset.id << '\n';
  out << "# total_frames=" << scored.dataset.size() << '\n';
  out << "# excluded_frames=" << scored.dataset.excluded().size() << '\n';
  out << "# unscored_frames=" << scored.diagnostics.size() << '\n';
  if (scored.asset) {
    out << "# asset_version=" << scored.asset->version << '\n';
    out << "# asset_checksum=" << scored.asset->checksum << '\n';
  }
  for (std::size_t c = 0; c < kScoredColumns.size(); ++c) out << (c ? "," : "") << kScoredColumns[c];
  out << '\n';
  for (std::size_t row = 0; row < scored.rows(); ++row) {
    const auto idx = scored.frame_indices[row];
    const auto& image = scored.dataset.frame(idx).image_ref;
    for (auto side : data::kBothSides) {
      const auto& s = scored.side(side)[row];
      out << idx << ',' << format_decimal(scored.timestamps[row]) << ',' << data::to_string(side);
      for (auto part : data::kAllBodyParts) out << ',' << s.score_of(part);
      out << ',' << s.table_a << ',' << s.load_score << ',' << s.score_a << ',' << s.table_b << ','
          << s.coupling_score << ',' << s.score_b << ',' << s.table_c << ',' << s.activity_score << ',' << s.grand
          << ',' << reba::to_string(s.action_level) << ',' << (image ? data::csv::quote(*image) : "") << '\n';
    }
  }
}

Report report_from_scored_csv(std::istream& in, std::size_t worst_k) {
  Report r;
  std::map<std::string, std::string> meta;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::uint64_t rows = 0;
  auto integer = [&](const std::vector<std::string>& f, std::size_t col) {
    const auto v = data::csv::parse_integer(f[col]);
    if (!v) throw SchemaMismatch(std::string(kScoredColumns[col]), line_no, "expected an integer");
    return *v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        auto key = line.substr(1, eq - 1);
        key.erase(0, key.find_first_not_of(' '));
        meta[key] = line.substr(eq + 1);
      }
      continue;
    }
    const auto f = data::csv::split_line(line);
    if (!header) {
      for (std::size_t c = 0; c < kScoredColumns.size(); ++c) {
        if (c >= f.size() || f[c] != kScoredColumns[c]) {
          throw SchemaMismatch(std::string(kScoredColumns[c]), line_no, "unexpected header");
        }
      }
      header = true;
      continue;
    }
    if (f.size() != kScoredColumns.size()) {
      throw SchemaMismatch("row", line_no, "expected " + std::to_string(kScoredColumns.size()) + " fields");
    }
    const auto side = data::parse_body_side(f[2]);
    if (!side) throw SchemaMismatch("side", line_no, "unknown side");
    const auto level = reba::parse_action_level(f[18]);
    if (!level) throw SchemaMismatch("action_level", line_no, "unknown action level");
    const auto grand = integer(f, 17);
    if (grand < 1 || grand > 15) throw SchemaMismatch("grand", line_no, "grand score outside [1, 15]");
    const auto t = data::csv::parse_double(f[1]);
    if (!t) throw SchemaMismatch("timestamp_s", line_no, "expected a number");
    add_row(r, static_cast<std::uint32_t>(integer(f, 0)), *side, *t, static_cast<int>(grand), *level,
            f[19].empty() ? std::nullopt : std::optional<std::string>(f[19]));
    ++rows;
  }
  if (!header) throw SchemaMismatch("header", line_no, "missing header");
  auto meta_count = [&](const char* key) -> std::uint64_t {
    const auto it = meta.find(key);
    if (it == meta.end()) return 0;
    return static_cast<std::uint64_t>(data::csv::parse_integer(it->second).value_or(0));
  };
  r.dataset_id = meta["dataset"];
  r.total_frames = meta_count("total_frames");
  r.excluded_frames = meta_count("excluded_frames");
  r.unscored_frames = meta_count("unscored_frames");
  r.included_frames = rows / 2;
  r.asset_version = meta["asset_version"];
  r.asset_checksum = meta["asset_checksum"];
  finish_worst(r, worst_k);
  return r;
}

}  // namespace ergo::service
