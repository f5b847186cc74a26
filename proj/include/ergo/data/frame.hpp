#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "ergo/data/joint.hpp"

namespace ergo::data {

enum class Coupling : std::uint8_t { good, fair, poor, unacceptable };

std::string_view to_string(Coupling c) noexcept;
std::optional<Coupling> parse_coupling(std::string_view text) noexcept;

/// Posture modifiers observed for one joint. Only the flags meaningful for
/// the joint's body part are consulted during scoring.
struct JointModifiers {
  bool twist = false;
  bool side_bend = false;
  bool abducted = false;
  bool shoulder_raised = false;
  bool arm_supported = false;
  bool unilateral_stance = false;
  bool deviated = false;

  friend bool operator==(const JointModifiers&, const JointModifiers&) = default;
};

struct AngleRange {
  double min_deg = 0.0;
  double max_deg = 0.0;

  bool contains(double a) const noexcept { return a >= min_deg && a <= max_deg; }
  double width() const noexcept { return max_deg - min_deg; }

  friend bool operator==(const AngleRange&, const AngleRange&) = default;
};

/// One video frame's joint angles and context. Leg angles are knee flexion.
struct FrameRecord {
  std::uint32_t frame_index = 0;
  double timestamp_s = 0.0;
  JointMap<double> angles{std::numeric_limits<double>::quiet_NaN()};
  JointMap<JointModifiers> modifiers;
  double trunk_twist_deg = 0.0;
  double neck_twist_deg = 0.0;
  double load_kg = 0.0;
  bool shock_force = false;
  Coupling coupling = Coupling::good;
  JointMap<double> confidence{1.0};
  std::optional<std::string> image_ref;

  double angle(JointId j) const noexcept { return angles[j]; }
  double knee_flexion_deg(BodySide side) const noexcept {
    return angles[joint_for(BodyPart::leg, side)];
  }

  friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

}  // namespace ergo::data
