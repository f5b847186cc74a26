#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ergo/data/dataset.hpp"
#include "ergo/data/validate.hpp"

namespace ergo::service {

/// angle(t) = baseline + amplitude * sin(2*pi*(t + phase) / period) + noise
struct Wave {
  double baseline_deg = 0.0;
  double amplitude_deg = 0.0;
  double period_s = 10.0;
  double phase_s = 0.0;
  /// Half-width of the uniform noise.
  double noise_deg = 0.0;
};

struct Spike {
  double t_s = 0.0;
  data::JointId joint;
  double angle_deg = 0.0;
};

struct SyntheticSpec {
  std::string id = "synthetic";
  double duration_s = 60.0;
  double fps = 30.0;
  std::uint64_t seed = 1;
  /// Joints driven by the shared wave; others hold a neutral posture.
  std::vector<data::JointId> joints;
  Wave wave;
  std::map<data::JointId, Wave> overrides;
  std::vector<Spike> spikes;
  data::JointMap<data::JointModifiers> modifiers;
  double trunk_twist_deg = 0.0;
  double neck_twist_deg = 0.0;
  double load_kg = 0.0;
  bool shock = false;
  data::Coupling coupling = data::Coupling::good;
  /// Give every frame an image reference.
  bool images = true;

  /// Throws Error(InvalidSpec).
  void validate() const;
};

/// Neutral angle per body part: every joint scores its minimum.
double neutral_angle_deg(data::BodyPart part) noexcept;

/// Throws Error(InvalidSpec).
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j);

/// Deterministic for a given spec (including its seed). Angles are clamped
/// to `ranges`; a spike replaces the nearest frame's angle.
data::Dataset generate_synthetic(const SyntheticSpec& spec,
                                 const data::MotionRanges& ranges = data::MotionRanges::defaults());

/// Writes `<id>_frames.csv` and the manifest `<id>.json` into `dir` and
/// returns the manifest path.
std::filesystem::path write_synthetic(const data::Dataset& dataset, const std::filesystem::path& dir);

}  // namespace ergo::service
