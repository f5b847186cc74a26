#include "ergo/service/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "ergo/data/ingest.hpp"
#include "ergo/error.hpp"

namespace ergo::service {

using nlohmann::json;

double neutral_angle_deg(data::BodyPart part) noexcept {
  switch (part) {
    case data::BodyPart::neck: return 10.0;
    case data::BodyPart::trunk: return 0.0;
    case data::BodyPart::leg: return 5.0;
    case data::BodyPart::upper_arm: return 10.0;
    case data::BodyPart::lower_arm: return 80.0;
    case data::BodyPart::wrist: return 0.0;
  }
  return 0.0;
}

void SyntheticSpec::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::InvalidSpec, m); };
  if (id.empty()) fail("id must not be empty");
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) fail("duration_s must be positive");
  if (!(fps > 0.0) || !std::isfinite(fps)) fail("fps must be positive");
  auto check_wave = [&](const Wave& w, const std::string& who) {
    if (!(w.period_s > 0.0)) fail(who + ": period_s must be positive");
    if (w.noise_deg < 0.0) fail(who + ": noise_deg must be non-negative");
    if (!std::isfinite(w.baseline_deg) || !std::isfinite(w.amplitude_deg) || !std::isfinite(w.phase_s)) {
      fail(who + ": wave parameters must be finite");
    }
  };
  check_wave(wave, "wave");
  for (const auto& [j, w] : overrides) check_wave(w, data::to_string(j));
  for (const auto& s : spikes) {
    if (s.t_s < 0.0 || s.t_s >= duration_s) fail("spike at " + std::to_string(s.t_s) + " s is outside the recording");
    if (!std::isfinite(s.angle_deg)) fail("spike angle must be finite");
  }
  if (!(load_kg >= 0.0)) fail("load_kg must be non-negative");
}

namespace {

data::JointId joint_field(const std::string& name) {
  const auto j = data::parse_joint(name);
  if (!j) throw Error(ErrorCode::InvalidSpec, "unknown joint " + name);
  return *j;
}

Wave wave_from(const json& j, Wave w) {
  w.baseline_deg = j.value("baseline_deg", w.baseline_deg);
  w.amplitude_deg = j.value("amplitude_deg", w.amplitude_deg);
  w.period_s = j.value("period_s", w.period_s);
  w.phase_s = j.value("phase_s", w.phase_s);
  w.noise_deg = j.value("noise_deg", w.noise_deg);
  return w;
}

void set_modifier(data::JointModifiers& m, const std::string& name) {
  if (name == "twist") m.twist = true;
  else if (name == "side_bend") m.side_bend = true;
  else if (name == "abducted") m.abducted = true;
  else if (name == "shoulder_raised") m.shoulder_raised = true;
  else if (name == "arm_supported") m.arm_supported = true;
  else if (name == "unilateral_stance") m.unilateral_stance = true;
  else if (name == "deviated") m.deviated = true;
  else throw Error(ErrorCode::InvalidSpec, "unknown modifier " + name);
}

}  // namespace

SyntheticSpec synthetic_spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidSpec, "spec must be a JSON object");
  try {
    SyntheticSpec s;
    s.id = j.value("id", s.id);
    s.duration_s = j.value("duration_s", s.duration_s);
    s.fps = j.value("fps", s.fps);
    s.seed = j.value("seed", s.seed);
    s.wave = wave_from(j, s.wave);
    for (const auto& name : j.value("joints", std::vector<std::string>{})) s.joints.push_back(joint_field(name));
    if (j.contains("overrides")) {
      for (const auto& [name, w] : j.at("overrides").items()) s.overrides[joint_field(name)] = wave_from(w, s.wave);
    }
    if (j.contains("injected_spikes")) {
      for (const auto& sp : j.at("injected_spikes")) {
        s.spikes.push_back({sp.at("t_s").get<double>(), joint_field(sp.at("joint").get<std::string>()),
                            sp.at("angle_deg").get<double>()});
      }
    }
    if (j.contains("modifiers")) {
      for (const auto& [name, flags] : j.at("modifiers").items()) {
        const auto joint = joint_field(name);
        for (const auto& f : flags) set_modifier(s.modifiers[joint], f.get<std::string>());
      }
    }
    s.trunk_twist_deg = j.value("trunk_twist_deg", s.trunk_twist_deg);
    s.neck_twist_deg = j.value("neck_twist_deg", s.neck_twist_deg);
    s.load_kg = j.value("load_kg", s.load_kg);
    s.shock = j.value("shock", s.shock);
    if (j.contains("coupling")) {
      const auto c = data::parse_coupling(j.at("coupling").get<std::string>());
      if (!c) throw Error(ErrorCode::InvalidSpec, "unknown coupling");
      s.coupling = *c;
    }
    s.images = j.value("images", s.images);
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("malformed spec: ") + e.what());
  }
}

data::Dataset generate_synthetic(const SyntheticSpec& spec, const data::MotionRanges& ranges) {
  spec.validate();
  const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * spec.fps));
  std::mt19937_64 rng(spec.seed);

  data::JointMap<std::optional<Wave>> waves;
  for (auto j : spec.joints) waves[j] = spec.wave;
  for (const auto& [j, w] : spec.overrides) waves[j] = w;

  std::vector<data::FrameRecord> frames(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& f = frames[i];
    f.frame_index = static_cast<std::uint32_t>(i);
    f.timestamp_s = static_cast<double>(i) / spec.fps;
    for (auto j : data::kAllJoints) {
      double a = neutral_angle_deg(j.part);
      if (const auto& w = waves[j]) {
        std::uniform_real_distribution<double> noise(-w->noise_deg, w->noise_deg);
        a = w->baseline_deg + w->amplitude_deg * std::sin(2.0 * std::numbers::pi * (f.timestamp_s + w->phase_s) / w->period_s);
        if (w->noise_deg > 0.0) a += noise(rng);
      }
      const auto& r = ranges.joints[j];
      f.angles[j] = std::clamp(a, r.min_deg, r.max_deg);
    }
    f.modifiers = spec.modifiers;
    f.trunk_twist_deg = spec.trunk_twist_deg;
    f.neck_twist_deg = spec.neck_twist_deg;
    f.load_kg = spec.load_kg;
    f.shock_force = spec.shock;
    f.coupling = spec.coupling;
    if (spec.images) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%06zu.png", i);
      f.image_ref = name;
    }
  }
  for (const auto& s : spec.spikes) {
    if (n == 0) break;
    const auto i = std::min(n - 1, static_cast<std::size_t>(std::llround(s.t_s * spec.fps)));
    const auto& r = ranges.joints[s.joint];
    frames[i].angles[s.joint] = std::clamp(s.angle_deg, r.min_deg, r.max_deg);
  }

  data::Dataset ds(spec.id, std::move(frames), spec.fps);
  ds.meta["generator"] = "synthetic";
  ds.meta["seed"] = std::to_string(spec.seed);
  return ds;
}

std::filesystem::path write_synthetic(const data::Dataset& dataset, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto csv_name = dataset.id + "_frames.csv";
  {
    std::ofstream out(dir / csv_name);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + (dir / csv_name).string());
    data::write_frames_csv(out, dataset);
  }
  data::Manifest m;
  m.id = dataset.id;
  m.frames_csv = csv_name;
  m.images_dir = "images";
  m.fps = dataset.fps;
  m.meta = dataset.meta;
  const auto path = dir / (dataset.id + ".json");
  data::write_manifest(path, m);
  return path;
}

}  // namespace ergo::service
