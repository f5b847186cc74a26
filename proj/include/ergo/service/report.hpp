#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ergo/reba/scoring.hpp"

namespace ergo::service {

inline constexpr std::size_t kDefaultWorstK = 10;

struct WorstFrame {
  std::uint32_t frame_index = 0;
  reba::BodySide side = reba::BodySide::left;
  double timestamp_s = 0.0;
  int grand = 0;
  reba::ActionLevel action_level = reba::ActionLevel::negligible;
  std::optional<std::string> image_ref;

  friend bool operator==(const WorstFrame&, const WorstFrame&) = default;
};

/// Triage summary of a scored recording.
struct Report {
  std::string dataset_id;
  std::uint64_t total_frames = 0;
  std::uint64_t excluded_frames = 0;
  /// Frames that were not excluded but failed scoring.
  std::uint64_t unscored_frames = 0;
  std::uint64_t included_frames = 0;
  /// Per side, count of each grand score 1..15 (index = score - 1).
  std::array<std::array<std::uint64_t, 15>, 2> grand_histogram{};
  /// Both sides pooled, indexed by ActionLevel; totals included_frames * 2.
  std::array<std::uint64_t, 5> action_levels{};
  std::vector<WorstFrame> worst;
  std::string asset_version;
  std::string asset_checksum;
  double runtime_ms = 0.0;
};

/// Worst frames are ordered by grand score descending, then frame index,
/// then side.
Report build_report(const reba::ScoredDataset& scored, std::size_t worst_k = kDefaultWorstK);

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

/// One row per scored frame and side, preceded by `# key=value` lines.
void write_scored_csv(std::ostream& out, const reba::ScoredDataset& scored);

/// Rebuilds the report from a scored CSV. Throws SchemaMismatch.
Report report_from_scored_csv(std::istream& in, std::size_t worst_k = kDefaultWorstK);

}  // namespace ergo::service
