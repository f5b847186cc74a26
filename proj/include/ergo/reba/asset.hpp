#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/data/frame.hpp"
#include "ergo/data/validate.hpp"

namespace ergo::reba {

using data::BodyPart;
using data::BodyPartMap;

enum class TableId : std::uint8_t { A, B, C };
inline constexpr std::array<TableId, 3> kAllTables = {TableId::A, TableId::B, TableId::C};

std::string_view to_string(TableId t) noexcept;
std::optional<TableId> parse_table_id(std::string_view text) noexcept;

enum class ActionLevel : std::uint8_t { negligible, low, medium, high, very_high };
std::string_view to_string(ActionLevel a) noexcept;
std::optional<ActionLevel> parse_action_level(std::string_view text) noexcept;

enum class RiskClass : std::uint8_t { low, medium, high };
std::string_view to_string(RiskClass r) noexcept;
std::optional<RiskClass> parse_risk_class(std::string_view text) noexcept;

struct TableDim {
  std::string name;
  int cardinality = 0;

  friend bool operator==(const TableDim&, const TableDim&) = default;
};

/// Dense lookup table. Indices are 1-based, one per dimension; cells are
/// stored row-major in `dims` order.
struct ScoreTable {
  TableId id = TableId::A;
  std::vector<TableDim> dims;
  /// Display layout: attributes laid out along columns (horizontal, outer
  /// level first) and along rows (vertical).
  std::vector<std::string> horizontal;
  std::vector<std::string> vertical;
  std::vector<int> cells;
  std::string version;

  std::size_t cell_count() const noexcept;
  /// Position of `attribute` in dims, or -1.
  int dim_index(std::string_view attribute) const noexcept;
  std::size_t flat_index(std::span<const int> indices) const;
  std::vector<int> unflatten(std::size_t flat) const;

  /// Positivity, monotonicity along every dimension and layout coverage.
  /// Each string names the offending cell.
  std::vector<std::string> invariant_violations() const;
};

/// Throws Error(IndexOutOfRange) naming the offending dimension.
int table_lookup(const ScoreTable& table, std::span<const int> indices);
inline int table_lookup(const ScoreTable& table, std::initializer_list<int> indices) {
  return table_lookup(table, std::span<const int>(indices.begin(), indices.size()));
}

/// Half-open [lo, hi) unless `closed`, in which case [lo, hi]. An absent
/// upper bound means unbounded.
struct Band {
  double lo = 0.0;
  std::optional<double> hi;
  int score = 0;
  bool closed = false;

  bool contains(double x) const noexcept {
    if (x < lo) return false;
    if (!hi) return true;
    return x < *hi || (closed && x == *hi);
  }

  friend bool operator==(const Band&, const Band&) = default;
};

/// Score deltas applied on top of the band score. Only the fields that are
/// meaningful for a body part are populated by the asset.
struct ModifierDeltas {
  int twist_or_side_bend = 0;
  int unilateral_stance = 0;
  int abducted = 0;
  int shoulder_raised = 0;
  int arm_supported = 0;
  int deviated = 0;

  friend bool operator==(const ModifierDeltas&, const ModifierDeltas&) = default;
};

struct AngleBandConfig {
  /// Ordered, partitioning the valid range; first matching band wins.
  BodyPartMap<std::vector<Band>> bands;
  BodyPartMap<ModifierDeltas> modifiers;
  /// Table input range per part: scores are clamped to [1, max_score].
  BodyPartMap<int> max_score;
  double twist_threshold_deg = 10.0;

  const Band* find_band(BodyPart part, double angle_deg) const noexcept;
};

struct LoadConfig {
  std::vector<Band> bands;
  int shock_bonus = 1;
};

struct ActivityConfig {
  double window_s = 60.0;
  double static_tolerance_deg = 5.0;
  int repeat_crossings = 4;
  double rapid_change_deg = 30.0;
};

struct ActionBand {
  int min = 1;
  int max = 1;
  ActionLevel level = ActionLevel::negligible;
};

/// A complete, versioned scoring configuration: tables, angle bands,
/// adjustments, action levels and gauge risk classes.
class RebaAsset {
 public:
  std::string version;
  std::array<ScoreTable, 3> tables;
  data::MotionRanges valid_ranges;
  AngleBandConfig angle_bands;
  LoadConfig load;
  std::array<int, 4> coupling_scores{0, 1, 2, 3};
  ActivityConfig activity;
  std::vector<ActionBand> action_levels;
  BodyPartMap<std::map<int, RiskClass>> risk_classes;
  /// SHA-256 of the asset text, lowercase hex.
  std::string checksum;

  const ScoreTable& table(TableId id) const noexcept { return tables[static_cast<std::size_t>(id)]; }

  /// Parses without checking invariants. Throws Error(InvalidAsset).
  static RebaAsset parse(std::string_view json_text);
  static RebaAsset from_file(const std::filesystem::path& path);
  /// The bundled standard worksheet asset, validated once.
  static const RebaAsset& standard();
  static std::string_view standard_text();

  std::vector<std::string> invariant_violations() const;
  /// Throws AssetInvariantError listing every violation.
  void require_valid() const;

  ActionLevel action_level(int grand) const;
  RiskClass risk_class(BodyPart part, int joint_score) const;
};

std::string sha256_hex(std::string_view bytes);

}  // namespace ergo::reba
