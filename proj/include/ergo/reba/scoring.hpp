#pragma once

#include <array>
#include <memory>
#include <span>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/data/dataset.hpp"
#include "ergo/reba/asset.hpp"

namespace ergo::reba {

using data::BodySide;
using data::JointId;

/// Posture adjustments that fired for one joint score, as a bitmask.
enum class Adjustment : std::uint8_t {
  twist = 1 << 0,
  side_bend = 1 << 1,
  unilateral_stance = 1 << 2,
  abducted = 1 << 3,
  shoulder_raised = 1 << 4,
  arm_supported = 1 << 5,
  deviated = 1 << 6,
  clamped = 1 << 7,
};

std::string_view to_string(Adjustment a) noexcept;

struct JointScore {
  JointId joint;
  int score = 0;
  double contributing_angle_deg = 0.0;
  std::uint8_t adjustments = 0;

  bool has(Adjustment a) const noexcept { return (adjustments & static_cast<std::uint8_t>(a)) != 0; }
  std::vector<std::string> adjustments_applied() const;

  friend bool operator==(const JointScore&, const JointScore&) = default;
};

/// Band score for the angle plus modifier deltas, clamped to the table input
/// range. Throws Error(UnknownJoint) or Error(AngleOutsideConfiguredBands).
JointScore joint_score_from_angle(JointId joint, double angle_deg, const data::JointModifiers& flags,
                                  const AngleBandConfig& config);

int load_score(double load_kg, bool shock_force, const LoadConfig& config);
int coupling_score(data::Coupling coupling, const RebaAsset& asset);

/// Standard banding: 1 negligible, 2-3 low, 4-7 medium, 8-10 high,
/// 11-15 very high. Throws Error(OutOfRange).
ActionLevel action_level(int grand);

/// Activity adjustments for one frame and side; each adds one point.
struct ActivityFlags {
  bool static_posture = false;
  bool repeated = false;
  bool rapid_change = false;

  int score() const noexcept { return int{static_posture} + int{repeated} + int{rapid_change}; }

  friend bool operator==(const ActivityFlags&, const ActivityFlags&) = default;
};

struct TableInputs {
  std::array<int, 3> values{};
  std::size_t size = 0;

  std::span<const int> span() const noexcept { return {values.data(), size}; }
  int operator[](std::size_t d) const noexcept { return values[d]; }
};

struct FramePostureScores {
  std::uint32_t frame_index = 0;
  BodySide side = BodySide::left;
  /// Indexed by BodyPart; limbs resolved to `side`.
  std::array<JointScore, data::kBodyPartCount> joint_scores{};
  int table_a = 0;
  int load_score = 0;
  int score_a = 0;
  int table_b = 0;
  int coupling_score = 0;
  int score_b = 0;
  int table_c = 0;
  int activity_score = 0;
  int grand = 0;
  ActionLevel action_level = ActionLevel::negligible;

  const JointScore& joint(data::BodyPart p) const noexcept {
    return joint_scores[static_cast<std::size_t>(p)];
  }
  int score_of(data::BodyPart p) const noexcept { return joint(p).score; }

  /// Lookup indices for a table, in that table's dimension order. Table C
  /// inputs are clamped to 12.
  TableInputs table_inputs(TableId table) const noexcept;

  friend bool operator==(const FramePostureScores&, const FramePostureScores&) = default;
};

FramePostureScores frame_reba(const data::FrameRecord& frame, BodySide side, const RebaAsset& asset,
                              ActivityFlags activity = {});

struct ScoreDiagnostic {
  std::uint32_t frame_index = 0;
  std::string message;
};

/// Scores for every included frame, both sides, plus columnar views used by
/// the aggregation and selection engines. Row r refers to frame
/// `frame_indices[r]`; rows are in ascending frame order.
struct ScoredDataset {
  data::Dataset dataset;
  std::vector<std::uint32_t> frame_indices;
  std::array<std::vector<FramePostureScores>, 2> sides;
  std::vector<ScoreDiagnostic> diagnostics;
  std::shared_ptr<const RebaAsset> asset;

  std::vector<double> timestamps;
  data::JointMap<std::vector<double>> angles;

  std::size_t rows() const noexcept { return frame_indices.size(); }
  const std::vector<FramePostureScores>& side(BodySide s) const noexcept {
    return sides[static_cast<std::size_t>(s)];
  }
  /// Row of a frame, or -1 when the frame is not scored.
  std::ptrdiff_t row_of(std::uint32_t frame_index) const noexcept;
  /// Joint score of `joint` in row r (neck and trunk read from the left side).
  int joint_score(JointId joint, std::size_t row) const noexcept;
};

struct ScoreOptions {
  /// Worker threads; results are identical for any value.
  unsigned threads = 1;
};

/// Scores all non-excluded frames. Per-frame failures are collected in
/// `diagnostics` and the frame is left out; scoring never aborts.
ScoredDataset score_dataset(const data::Dataset& dataset, const RebaAsset& asset, const ScoreOptions& options = {});

}  // namespace ergo::reba
