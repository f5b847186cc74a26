#include "ergo/data/ingest.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ergo/data/csv.hpp"
#include "ergo/error.hpp"

namespace ergo::data {

namespace {

using nlohmann::json;

constexpr JointId kNeck{BodyPart::neck, Side::center};
constexpr JointId kTrunk{BodyPart::trunk, Side::center};

constexpr JointId limb(BodyPart p, Side s) { return JointId{p, s}; }

struct AngleColumn {
  const char* name;
  JointId joint;
};

constexpr std::array<AngleColumn, 10> kAngleColumns = {{
    {"neck_center_deg", kNeck},
    {"trunk_center_deg", kTrunk},
    {"upper_arm_left_deg", limb(BodyPart::upper_arm, Side::left)},
    {"upper_arm_right_deg", limb(BodyPart::upper_arm, Side::right)},
    {"lower_arm_left_deg", limb(BodyPart::lower_arm, Side::left)},
    {"lower_arm_right_deg", limb(BodyPart::lower_arm, Side::right)},
    {"wrist_left_deg", limb(BodyPart::wrist, Side::left)},
    {"wrist_right_deg", limb(BodyPart::wrist, Side::right)},
    {"knee_left_deg", limb(BodyPart::leg, Side::left)},
    {"knee_right_deg", limb(BodyPart::leg, Side::right)},
}};

struct FlagColumn {
  const char* name;
  JointId joint;
  bool JointModifiers::*flag;
};

// Stance is whole-body: read into the left leg, mirrored onto the right.
constexpr std::array<FlagColumn, 11> kFlagColumns = {{
    {"neck_side_bend", kNeck, &JointModifiers::side_bend},
    {"trunk_side_bend", kTrunk, &JointModifiers::side_bend},
    {"upper_arm_left_abducted", limb(BodyPart::upper_arm, Side::left), &JointModifiers::abducted},
    {"upper_arm_right_abducted", limb(BodyPart::upper_arm, Side::right), &JointModifiers::abducted},
    {"shoulder_left_raised", limb(BodyPart::upper_arm, Side::left), &JointModifiers::shoulder_raised},
    {"shoulder_right_raised", limb(BodyPart::upper_arm, Side::right), &JointModifiers::shoulder_raised},
    {"arm_left_supported", limb(BodyPart::upper_arm, Side::left), &JointModifiers::arm_supported},
    {"arm_right_supported", limb(BodyPart::upper_arm, Side::right), &JointModifiers::arm_supported},
    {"wrist_left_deviated", limb(BodyPart::wrist, Side::left), &JointModifiers::deviated},
    {"wrist_right_deviated", limb(BodyPart::wrist, Side::right), &JointModifiers::deviated},
    {"unilateral_stance", limb(BodyPart::leg, Side::left), &JointModifiers::unilateral_stance},
}};

std::vector<std::string> build_columns() {
  std::vector<std::string> cols = {"frame_index", "timestamp_s"};
  for (const auto& a : kAngleColumns) cols.emplace_back(a.name);
  cols.emplace_back("trunk_twist_deg");
  cols.emplace_back("neck_twist_deg");
  for (const auto& f : kFlagColumns) cols.emplace_back(f.name);
  for (const char* c : {"load_kg", "shock", "coupling", "confidence_mean", "image_ref"}) cols.emplace_back(c);
  return cols;
}

// Positions of the fixed columns.
constexpr std::size_t kColIndex = 0;
constexpr std::size_t kColTimestamp = 1;
constexpr std::size_t kColFirstAngle = 2;
constexpr std::size_t kColTrunkTwist = kColFirstAngle + kAngleColumns.size();
constexpr std::size_t kColNeckTwist = kColTrunkTwist + 1;
constexpr std::size_t kColFirstFlag = kColNeckTwist + 1;
constexpr std::size_t kFlagCount = kFlagColumns.size();
constexpr std::size_t kColLoad = kColFirstFlag + kFlagCount;
constexpr std::size_t kColShock = kColLoad + 1;
constexpr std::size_t kColCoupling = kColShock + 1;
constexpr std::size_t kColConfidence = kColCoupling + 1;
constexpr std::size_t kColImage = kColConfidence + 1;
constexpr std::size_t kColumnCount = kColImage + 1;
static_assert(kColumnCount == 30);

struct ParsedRow {
  long long source_index = 0;
  bool has_timestamp = false;
  FrameRecord frame;
};

// Throws SchemaMismatch on the first bad field.
ParsedRow parse_row(const std::vector<std::string>& f, std::size_t row,
                    std::span<const std::string> cols, const MotionRanges& ranges) {
  if (f.size() != kColumnCount) {
    throw SchemaMismatch(f.size() < kColumnCount ? cols[f.size()] : "<extra>", row,
                         "expected " + std::to_string(kColumnCount) + " fields, got " +
                             std::to_string(f.size()));
  }
  ParsedRow out;
  auto number = [&](std::size_t c) {
    auto v = csv::parse_double(f[c]);
    if (!v || !std::isfinite(*v)) throw SchemaMismatch(cols[c], row, "not a finite number: '" + f[c] + "'");
    return *v;
  };
  auto flag = [&](std::size_t c) {
    auto v = csv::parse_flag(f[c]);
    if (!v) throw SchemaMismatch(cols[c], row, "expected 0 or 1: '" + f[c] + "'");
    return *v;
  };

  const auto idx = csv::parse_integer(f[kColIndex]);
  if (!idx || *idx < 0) throw SchemaMismatch(cols[kColIndex], row, "not a non-negative integer: '" + f[kColIndex] + "'");
  out.source_index = *idx;

  if (!f[kColTimestamp].empty()) {
    out.frame.timestamp_s = number(kColTimestamp);
    out.has_timestamp = true;
  }

  auto& fr = out.frame;
  for (std::size_t i = 0; i < kAngleColumns.size(); ++i) {
    const auto c = kColFirstAngle + i;
    const double a = number(c);
    if (!ranges.joints[kAngleColumns[i].joint].contains(a)) {
      throw SchemaMismatch(cols[c], row, "angle " + f[c] + " outside valid range");
    }
    fr.angles[kAngleColumns[i].joint] = a;
  }
  fr.trunk_twist_deg = number(kColTrunkTwist);
  if (!ranges.trunk_twist.contains(fr.trunk_twist_deg)) {
    throw SchemaMismatch(cols[kColTrunkTwist], row, "angle outside valid range");
  }
  fr.neck_twist_deg = number(kColNeckTwist);
  if (!ranges.neck_twist.contains(fr.neck_twist_deg)) {
    throw SchemaMismatch(cols[kColNeckTwist], row, "angle outside valid range");
  }

  for (std::size_t i = 0; i < kFlagColumns.size(); ++i) {
    fr.modifiers[kFlagColumns[i].joint].*kFlagColumns[i].flag = flag(kColFirstFlag + i);
  }
  fr.modifiers[limb(BodyPart::leg, Side::right)].unilateral_stance =
      fr.modifiers[limb(BodyPart::leg, Side::left)].unilateral_stance;

  fr.load_kg = number(kColLoad);
  if (fr.load_kg < 0.0) throw SchemaMismatch(cols[kColLoad], row, "negative load");
  fr.shock_force = flag(kColShock);
  const auto coupling = parse_coupling(f[kColCoupling]);
  if (!coupling) throw SchemaMismatch(cols[kColCoupling], row, "unknown coupling '" + f[kColCoupling] + "'");
  fr.coupling = *coupling;
  const double conf = number(kColConfidence);
  if (conf < 0.0 || conf > 1.0) throw SchemaMismatch(cols[kColConfidence], row, "confidence outside [0,1]");
  fr.confidence = JointMap<double>(conf);
  if (!f[kColImage].empty()) fr.image_ref = f[kColImage];
  return out;
}

std::string format_gaps(const std::vector<std::pair<long long, long long>>& gaps) {
  std::string out;
  for (const auto& [lo, hi] : gaps) {
    if (!out.empty()) out += ',';
    out += std::to_string(lo);
    if (hi != lo) out += "-" + std::to_string(hi);
  }
  return out;
}

}  // namespace

std::span<const std::string> frames_csv_columns() {
  static const std::vector<std::string> cols = build_columns();
  return cols;
}

Manifest read_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorCode::MissingManifest, "manifest not found: " + manifest_path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaMismatch("manifest", 0, e.what());
  }
  if (!j.is_object()) throw SchemaMismatch("manifest", 0, "expected a JSON object");
  const auto base = manifest_path.parent_path();
  Manifest m;
  try {
    m.id = j.at("id").get<std::string>();
    m.frames_csv = base / j.at("frames_csv").get<std::string>();
    m.images_dir = base / j.value("images_dir", std::string{"."});
    m.fps = j.value("fps", 30.0);
    if (j.contains("meta")) {
      for (const auto& [k, v] : j.at("meta").items()) {
        m.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
  } catch (const json::exception& e) {
    throw SchemaMismatch("manifest", 0, e.what());
  }
  if (!(m.fps > 0.0) || !std::isfinite(m.fps)) throw SchemaMismatch("fps", 0, "fps must be positive");
  return m;
}

void write_manifest(const std::filesystem::path& manifest_path, const Manifest& m) {
  const auto base = manifest_path.parent_path();
  json j;
  j["id"] = m.id;
  j["frames_csv"] = m.frames_csv.is_absolute() ? std::filesystem::relative(m.frames_csv, base).generic_string()
                                                : m.frames_csv.generic_string();
  j["images_dir"] = m.images_dir.is_absolute() ? std::filesystem::relative(m.images_dir, base).generic_string()
                                                : m.images_dir.generic_string();
  j["fps"] = m.fps;
  j["meta"] = json::object();
  for (const auto& [k, v] : m.meta) j["meta"][k] = v;
  std::ofstream out(manifest_path);
  if (!out) throw Error(ErrorCode::Io, "cannot write manifest: " + manifest_path.string());
  out << j.dump(2) << '\n';
}

LoadResult read_frames_csv(std::istream& in, std::string id, double fps, const LoadOptions& options) {
  const auto cols = frames_csv_columns();
  LoadResult result;
  std::string line;
  std::size_t row = 0;

  if (!std::getline(in, line)) throw SchemaMismatch("header", 1, "missing header row");
  ++row;
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = csv::split_line(line);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c >= header.size() || header[c] != cols[c]) {
      throw SchemaMismatch(cols[c], 1, c < header.size() ? "header has '" + header[c] + "'" : "header too short");
    }
  }
  if (header.size() != cols.size()) throw SchemaMismatch("header", 1, "unexpected extra columns");

  std::vector<ParsedRow> rows;
  std::vector<std::size_t> row_numbers;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    try {
      auto parsed = parse_row(csv::split_line(line), row, cols, options.ranges);
      if (!rows.empty() && parsed.source_index <= rows.back().source_index) {
        throw SchemaMismatch("frame_index", row, "frame_index must strictly increase");
      }
      if (!parsed.has_timestamp) parsed.frame.timestamp_s = static_cast<double>(parsed.source_index) / fps;
      if (!rows.empty() && !(parsed.frame.timestamp_s > rows.back().frame.timestamp_s)) {
        throw NonMonotoneTimestamp(row);
      }
      rows.push_back(std::move(parsed));
      row_numbers.push_back(row);
    } catch (const SchemaMismatch& e) {
      if (!options.lenient) throw;
      result.diagnostics.push_back({e.row(), e.column(), e.what()});
    } catch (const NonMonotoneTimestamp& e) {
      if (!options.lenient) throw;
      result.diagnostics.push_back({e.row(), "timestamp_s", e.what()});
    }
  }

  std::vector<FrameRecord> frames;
  frames.reserve(rows.size());
  std::vector<std::pair<long long, long long>> gaps;
  long long expected = 0;
  for (auto& r : rows) {
    if (r.source_index != expected) gaps.emplace_back(expected, r.source_index - 1);
    expected = r.source_index + 1;
    r.frame.frame_index = static_cast<std::uint32_t>(frames.size());
    frames.push_back(std::move(r.frame));
  }

  result.dataset = Dataset(std::move(id), std::move(frames), fps);
  if (!gaps.empty()) result.dataset.meta["index_gaps"] = format_gaps(gaps);
  if (!result.diagnostics.empty()) {
    result.dataset.meta["rejected_rows"] = std::to_string(result.diagnostics.size());
  }
  return result;
}

LoadResult load_dataset(const std::filesystem::path& manifest_path, const LoadOptions& options) {
  const Manifest m = read_manifest(manifest_path);
  std::ifstream in(m.frames_csv);
  if (!in) throw Error(ErrorCode::MissingManifest, "frames file not found: " + m.frames_csv.string());
  LoadResult r = read_frames_csv(in, m.id, m.fps, options);
  r.dataset.images_dir = m.images_dir;
  for (const auto& [k, v] : m.meta) r.dataset.meta.emplace(k, v);
  return r;
}

void write_frames_csv(std::ostream& out, const Dataset& dataset) {
  const auto cols = frames_csv_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  for (const auto& f : dataset.frames()) {
    out << f.frame_index << ',' << csv::format_decimal(f.timestamp_s);
    for (const auto& a : kAngleColumns) out << ',' << csv::format_decimal(f.angles[a.joint]);
    out << ',' << csv::format_decimal(f.trunk_twist_deg) << ',' << csv::format_decimal(f.neck_twist_deg);
    for (const auto& fl : kFlagColumns) out << ',' << (f.modifiers[fl.joint].*fl.flag ? '1' : '0');
    double conf = 0.0;
    for (double c : f.confidence) conf += c;
    conf /= static_cast<double>(kJointCount);
    out << ',' << csv::format_decimal(f.load_kg) << ',' << (f.shock_force ? '1' : '0') << ','
        << to_string(f.coupling) << ',' << csv::format_decimal(conf) << ','
        << csv::quote(f.image_ref.value_or(""));
    out << '\n';
  }
}

}  // namespace ergo::data
