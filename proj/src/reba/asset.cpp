#include "ergo/reba/asset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "ergo/error.hpp"

namespace ergo::reba {

extern const char kStandardAssetText[];

namespace {

using nlohmann::json;

struct ExpectedDims {
  TableId id;
  std::vector<TableDim> dims;
};

const std::array<ExpectedDims, 3>& expected_dims() {
  static const std::array<ExpectedDims, 3> e = {{
      {TableId::A, {{"neck", 3}, {"legs", 4}, {"trunk", 5}}},
      {TableId::B, {{"lower_arm", 2}, {"wrist", 3}, {"upper_arm", 6}}},
      {TableId::C, {{"score_a", 12}, {"score_b", 12}}},
  }};
  return e;
}

std::string format_indices(const ScoreTable& t, std::span<const int> idx) {
  std::string out = std::string(to_string(t.id)) + "(";
  for (std::size_t d = 0; d < idx.size(); ++d) {
    if (d) out += ", ";
    out += t.dims[d].name + "=" + std::to_string(idx[d]);
  }
  return out + ")";
}

Band parse_band(const json& j) {
  Band b;
  b.lo = j.at("lo").get<double>();
  if (j.contains("hi") && !j.at("hi").is_null()) b.hi = j.at("hi").get<double>();
  b.score = j.at("score").get<int>();
  b.closed = j.value("closed", false);
  return b;
}

BodyPart require_part(const std::string& name) {
  const auto p = data::parse_body_part(name);
  if (!p) throw Error(ErrorCode::InvalidAsset, "unknown body part '" + name + "'");
  return *p;
}

data::AngleRange parse_range(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::InvalidAsset, "range must be [min, max]");
  return {j[0].get<double>(), j[1].get<double>()};
}

// Table attribute that carries each body part's score.
std::pair<TableId, const char*> table_attribute(BodyPart p) {
  switch (p) {
    case BodyPart::neck: return {TableId::A, "neck"};
    case BodyPart::leg: return {TableId::A, "legs"};
    case BodyPart::trunk: return {TableId::A, "trunk"};
    case BodyPart::lower_arm: return {TableId::B, "lower_arm"};
    case BodyPart::wrist: return {TableId::B, "wrist"};
    case BodyPart::upper_arm: return {TableId::B, "upper_arm"};
  }
  return {TableId::A, "neck"};
}

}  // namespace

std::string_view to_string(TableId t) noexcept {
  switch (t) {
    case TableId::A: return "A";
    case TableId::B: return "B";
    case TableId::C: return "C";
  }
  return "?";
}

std::optional<TableId> parse_table_id(std::string_view text) noexcept {
  if (text == "A" || text == "a") return TableId::A;
  if (text == "B" || text == "b") return TableId::B;
  if (text == "C" || text == "c") return TableId::C;
  return std::nullopt;
}

std::string_view to_string(ActionLevel a) noexcept {
  switch (a) {
    case ActionLevel::negligible: return "negligible";
    case ActionLevel::low: return "low";
    case ActionLevel::medium: return "medium";
    case ActionLevel::high: return "high";
    case ActionLevel::very_high: return "very_high";
  }
  return "?";
}

std::optional<ActionLevel> parse_action_level(std::string_view text) noexcept {
  for (auto a : {ActionLevel::negligible, ActionLevel::low, ActionLevel::medium, ActionLevel::high,
                 ActionLevel::very_high}) {
    if (to_string(a) == text) return a;
  }
  return std::nullopt;
}

std::string_view to_string(RiskClass r) noexcept {
  switch (r) {
    case RiskClass::low: return "low";
    case RiskClass::medium: return "medium";
    case RiskClass::high: return "high";
  }
  return "?";
}

std::optional<RiskClass> parse_risk_class(std::string_view text) noexcept {
  if (text == "low") return RiskClass::low;
  if (text == "medium") return RiskClass::medium;
  if (text == "high") return RiskClass::high;
  return std::nullopt;
}

std::size_t ScoreTable::cell_count() const noexcept {
  std::size_t n = 1;
  for (const auto& d : dims) n *= static_cast<std::size_t>(d.cardinality);
  return n;
}

int ScoreTable::dim_index(std::string_view attribute) const noexcept {
  for (std::size_t d = 0; d < dims.size(); ++d) {
    if (dims[d].name == attribute) return static_cast<int>(d);
  }
  return -1;
}

std::size_t ScoreTable::flat_index(std::span<const int> indices) const {
  if (indices.size() != dims.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "table " + std::string(to_string(id)) + " expects " +
                                                std::to_string(dims.size()) + " indices");
  }
  std::size_t flat = 0;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    const int i = indices[d];
    if (i < 1 || i > dims[d].cardinality) {
      throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(i) + " out of range for dimension '" +
                                                  dims[d].name + "' of table " + std::string(to_string(id)));
    }
    flat = flat * static_cast<std::size_t>(dims[d].cardinality) + static_cast<std::size_t>(i - 1);
  }
  return flat;
}

std::vector<int> ScoreTable::unflatten(std::size_t flat) const {
  std::vector<int> idx(dims.size());
  for (std::size_t d = dims.size(); d-- > 0;) {
    const auto card = static_cast<std::size_t>(dims[d].cardinality);
    idx[d] = static_cast<int>(flat % card) + 1;
    flat /= card;
  }
  return idx;
}

std::vector<std::string> ScoreTable::invariant_violations() const {
  std::vector<std::string> out;
  const std::string name = "table " + std::string(to_string(id));
  if (dims.empty()) {
    out.push_back(name + ": no dimensions");
    return out;
  }
  if (cells.size() != cell_count()) {
    out.push_back(name + ": expected " + std::to_string(cell_count()) + " cells, found " +
                  std::to_string(cells.size()));
    return out;
  }
  std::vector<std::string> layout = horizontal;
  layout.insert(layout.end(), vertical.begin(), vertical.end());
  std::vector<std::string> dim_names;
  for (const auto& d : dims) dim_names.push_back(d.name);
  auto sorted_layout = layout;
  std::sort(sorted_layout.begin(), sorted_layout.end());
  std::sort(dim_names.begin(), dim_names.end());
  if (sorted_layout != dim_names || horizontal.empty() || vertical.empty()) {
    out.push_back(name + ": horizontal/vertical layout must partition the dimensions");
  }
  for (std::size_t flat = 0; flat < cells.size(); ++flat) {
    const auto idx = unflatten(flat);
    if (cells[flat] < 1) {
      out.push_back(name + ": cell " + format_indices(*this, idx) + " = " + std::to_string(cells[flat]) +
                    " is not positive");
    }
    for (std::size_t d = 0; d < dims.size(); ++d) {
      if (idx[d] == dims[d].cardinality) continue;
      auto next = idx;
      ++next[d];
      const int here = cells[flat];
      const int there = cells[flat_index(next)];
      if (there < here) {
        out.push_back(name + ": not monotone along '" + dims[d].name + "': cell " + format_indices(*this, idx) +
                      " = " + std::to_string(here) + " > cell " + format_indices(*this, next) + " = " +
                      std::to_string(there));
      }
    }
  }
  return out;
}

int table_lookup(const ScoreTable& table, std::span<const int> indices) {
  return table.cells[table.flat_index(indices)];
}

const Band* AngleBandConfig::find_band(BodyPart part, double angle_deg) const noexcept {
  for (const auto& b : bands[part]) {
    if (b.contains(angle_deg)) return &b;
  }
  return nullptr;
}

RebaAsset RebaAsset::parse(std::string_view text) {
  RebaAsset a;
  a.checksum = sha256_hex(text);
  try {
    const json j = json::parse(text.begin(), text.end());
    a.version = j.at("version").get<std::string>();

    const auto& tables = j.at("tables");
    for (auto id : kAllTables) {
      const auto& tj = tables.at(std::string(to_string(id)));
      ScoreTable& t = a.tables[static_cast<std::size_t>(id)];
      t.id = id;
      t.version = a.version;
      for (const auto& d : tj.at("dims")) t.dims.push_back({d.at(0).get<std::string>(), d.at(1).get<int>()});
      t.horizontal = tj.at("horizontal").get<std::vector<std::string>>();
      t.vertical = tj.at("vertical").get<std::vector<std::string>>();
      t.cells = tj.at("cells").get<std::vector<int>>();
      for (const auto& d : t.dims) {
        if (d.cardinality < 1) throw Error(ErrorCode::InvalidAsset, "dimension '" + d.name + "' has no values");
      }
    }

    for (const auto& [name, r] : j.at("valid_ranges").items()) {
      if (name == "trunk_twist") {
        a.valid_ranges.trunk_twist = parse_range(r);
      } else if (name == "neck_twist") {
        a.valid_ranges.neck_twist = parse_range(r);
      } else {
        const auto part = require_part(name);
        for (auto jid : data::kAllJoints) {
          if (jid.part == part) a.valid_ranges.joints[jid] = parse_range(r);
        }
      }
    }

    for (const auto& [name, list] : j.at("angle_bands").items()) {
      auto& bands = a.angle_bands.bands[require_part(name)];
      for (const auto& b : list) bands.push_back(parse_band(b));
    }
    for (const auto& [name, m] : j.at("modifiers").items()) {
      auto& d = a.angle_bands.modifiers[require_part(name)];
      d.twist_or_side_bend = m.value("twist_or_side_bend", 0);
      d.unilateral_stance = m.value("unilateral_stance", 0);
      d.abducted = m.value("abducted", 0);
      d.shoulder_raised = m.value("shoulder_raised", 0);
      d.arm_supported = m.value("arm_supported", 0);
      d.deviated = m.value("deviated", 0);
    }
    a.angle_bands.twist_threshold_deg = j.value("twist_threshold_deg", 10.0);
    for (auto p : data::kAllBodyParts) {
      const auto [tid, attr] = table_attribute(p);
      const auto& t = a.tables[static_cast<std::size_t>(tid)];
      const int d = t.dim_index(attr);
      a.angle_bands.max_score[p] = d >= 0 ? t.dims[static_cast<std::size_t>(d)].cardinality : 0;
    }

    for (const auto& b : j.at("load_bands")) a.load.bands.push_back(parse_band(b));
    a.load.shock_bonus = j.value("shock_bonus", 1);

    const auto& cj = j.at("coupling_scores");
    for (auto c : {data::Coupling::good, data::Coupling::fair, data::Coupling::poor, data::Coupling::unacceptable}) {
      a.coupling_scores[static_cast<std::size_t>(c)] = cj.at(std::string(data::to_string(c))).get<int>();
    }

    if (j.contains("activity")) {
      const auto& act = j.at("activity");
      a.activity.window_s = act.value("window_s", a.activity.window_s);
      a.activity.static_tolerance_deg = act.value("static_tolerance_deg", a.activity.static_tolerance_deg);
      a.activity.repeat_crossings = act.value("repeat_crossings", a.activity.repeat_crossings);
      a.activity.rapid_change_deg = act.value("rapid_change_deg", a.activity.rapid_change_deg);
    }

    for (const auto& lj : j.at("action_levels")) {
      const auto level = parse_action_level(lj.at("level").get<std::string>());
      if (!level) throw Error(ErrorCode::InvalidAsset, "unknown action level " + lj.at("level").dump());
      a.action_levels.push_back({lj.at("min").get<int>(), lj.at("max").get<int>(), *level});
    }

    for (const auto& [name, m] : j.at("risk_classes").items()) {
      auto& rc = a.risk_classes[require_part(name)];
      for (const auto& [score, cls] : m.items()) {
        const auto r = parse_risk_class(cls.get<std::string>());
        if (!r) throw Error(ErrorCode::InvalidAsset, "unknown risk class " + cls.dump());
        rc[std::stoi(score)] = *r;
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidAsset, std::string("malformed table asset: ") + e.what());
  }
  return a;
}

RebaAsset RebaAsset::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open table asset: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string_view RebaAsset::standard_text() { return kStandardAssetText; }

const RebaAsset& RebaAsset::standard() {
  static const RebaAsset asset = [] {
    auto a = parse(standard_text());
    a.require_valid();
    return a;
  }();
  return asset;
}

std::vector<std::string> RebaAsset::invariant_violations() const {
  std::vector<std::string> out;
  for (const auto& e : expected_dims()) {
    const auto& t = table(e.id);
    if (t.dims != e.dims) {
      std::string want;
      for (const auto& d : e.dims) want += " " + d.name + ":" + std::to_string(d.cardinality);
      out.push_back("table " + std::string(to_string(e.id)) + ": dimensions must be" + want);
      continue;
    }
    auto v = t.invariant_violations();
    out.insert(out.end(), v.begin(), v.end());
  }
  if (out.empty()) {
    const int anchor = table_lookup(table(TableId::A), {2, 3, 5});
    if (anchor != 8) out.push_back("table A: anchor cell A(neck=2, legs=3, trunk=5) = " + std::to_string(anchor) + ", expected 8");
  }

  for (auto p : data::kAllBodyParts) {
    const auto& bands = angle_bands.bands[p];
    const std::string name = "angle_bands." + std::string(data::to_string(p));
    const auto range = valid_ranges.joints[data::joint_for(p, data::BodySide::left)];
    if (bands.empty()) {
      out.push_back(name + ": no bands");
      continue;
    }
    if (bands.front().lo != range.min_deg) out.push_back(name + ": first band must start at the valid minimum");
    for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
      if (!bands[i].hi || *bands[i].hi != bands[i + 1].lo) out.push_back(name + ": bands must be contiguous");
    }
    const auto& last = bands.back();
    if (!last.hi || *last.hi != range.max_deg || !last.closed) {
      out.push_back(name + ": last band must be closed at the valid maximum");
    }
    const int max_score = angle_bands.max_score[p];
    for (const auto& b : bands) {
      if (b.score < 1 || b.score > max_score) {
        out.push_back(name + ": band score " + std::to_string(b.score) + " outside [1, " + std::to_string(max_score) + "]");
      }
    }
    const auto& rc = risk_classes[p];
    for (int s = 1; s <= max_score; ++s) {
      if (!rc.contains(s)) out.push_back("risk_classes." + std::string(data::to_string(p)) + ": score " + std::to_string(s) + " unmapped");
    }
  }

  // Grand score = Table C + activity in [0, 3] must stay within [1, 15].
  const auto& c = table(TableId::C).cells;
  if (!c.empty()) {
    const auto [mn, mx] = std::minmax_element(c.begin(), c.end());
    if (*mn < 1 || *mx + 3 > 15) out.push_back("table C: grand score range escapes [1, 15]");
  }

  int expect = 1;
  int prev_level = -1;
  for (const auto& b : action_levels) {
    if (b.min != expect || b.max < b.min) out.push_back("action_levels: bands must tile 1..15 in order");
    if (static_cast<int>(b.level) <= prev_level) out.push_back("action_levels: levels must increase");
    prev_level = static_cast<int>(b.level);
    expect = b.max + 1;
  }
  if (expect != 16) out.push_back("action_levels: bands must cover 1..15");

  for (int s : coupling_scores) {
    if (s < 0 || s > 3) out.push_back("coupling_scores: values must lie in [0, 3]");
  }
  for (const auto& b : load.bands) {
    if (b.score < 0 || b.score + load.shock_bonus > 3) out.push_back("load_bands: load score must lie in [0, 3]");
  }
  return out;
}

void RebaAsset::require_valid() const {
  auto v = invariant_violations();
  if (!v.empty()) throw AssetInvariantError(std::move(v));
}

ActionLevel RebaAsset::action_level(int grand) const {
  for (const auto& b : action_levels) {
    if (grand >= b.min && grand <= b.max) return b.level;
  }
  throw Error(ErrorCode::OutOfRange, "grand score " + std::to_string(grand) + " outside [1, 15]");
}

RiskClass RebaAsset::risk_class(BodyPart part, int joint_score) const {
  const auto& m = risk_classes[part];
  if (const auto it = m.find(joint_score); it != m.end()) return it->second;
  throw Error(ErrorCode::OutOfRange, "no risk class for " + std::string(data::to_string(part)) + " score " +
                                         std::to_string(joint_score));
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::string out;
  out.reserve(len * 2);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

}  // namespace ergo::reba
