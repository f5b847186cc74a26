#include "ergo/reba/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <thread>

#include "ergo/error.hpp"
#include "ergo/reba/activity.hpp"

namespace ergo::reba {

using data::BodyPart;

std::string_view to_string(Adjustment a) noexcept {
  switch (a) {
    case Adjustment::twist: return "twist";
    case Adjustment::side_bend: return "side_bend";
    case Adjustment::unilateral_stance: return "unilateral_stance";
    case Adjustment::abducted: return "abducted";
    case Adjustment::shoulder_raised: return "shoulder_raised";
    case Adjustment::arm_supported: return "arm_supported";
    case Adjustment::deviated: return "deviated";
    case Adjustment::clamped: return "clamped";
  }
  return "?";
}

std::vector<std::string> JointScore::adjustments_applied() const {
  std::vector<std::string> out;
  for (int bit = 0; bit < 8; ++bit) {
    const auto a = static_cast<Adjustment>(1 << bit);
    if (has(a)) out.emplace_back(to_string(a));
  }
  return out;
}

JointScore joint_score_from_angle(JointId joint, double angle_deg, const data::JointModifiers& flags,
                                  const AngleBandConfig& config) {
  if (!joint.valid() || static_cast<std::size_t>(joint.part) >= data::kBodyPartCount) {
    throw Error(ErrorCode::UnknownJoint, "unknown joint " + data::to_string(joint));
  }
  const Band* band = config.find_band(joint.part, angle_deg);
  if (band == nullptr) {
    throw Error(ErrorCode::AngleOutsideConfiguredBands,
                "angle " + std::to_string(angle_deg) + " outside the configured bands of " + data::to_string(joint));
  }

  JointScore js{joint, band->score, angle_deg, 0};
  const auto& d = config.modifiers[joint.part];
  auto apply = [&js](bool fired, int delta, Adjustment a) {
    if (fired && delta != 0) {
      js.score += delta;
      js.adjustments |= static_cast<std::uint8_t>(a);
    }
  };
  // Twist and side-bend share one adjustment.
  if (d.twist_or_side_bend != 0 && (flags.twist || flags.side_bend)) {
    js.score += d.twist_or_side_bend;
    if (flags.twist) js.adjustments |= static_cast<std::uint8_t>(Adjustment::twist);
    if (flags.side_bend) js.adjustments |= static_cast<std::uint8_t>(Adjustment::side_bend);
  }
  apply(flags.unilateral_stance, d.unilateral_stance, Adjustment::unilateral_stance);
  apply(flags.abducted, d.abducted, Adjustment::abducted);
  apply(flags.shoulder_raised, d.shoulder_raised, Adjustment::shoulder_raised);
  apply(flags.arm_supported, d.arm_supported, Adjustment::arm_supported);
  // A twisted wrist counts as deviated.
  apply(flags.deviated || (flags.twist && d.twist_or_side_bend == 0), d.deviated, Adjustment::deviated);

  const int hi = std::max(1, config.max_score[joint.part]);
  const int clamped = std::clamp(js.score, 1, hi);
  if (clamped != js.score) js.adjustments |= static_cast<std::uint8_t>(Adjustment::clamped);
  js.score = clamped;
  return js;
}

int load_score(double load_kg, bool shock_force, const LoadConfig& config) {
  int s = 0;
  for (const auto& b : config.bands) {
    if (b.contains(load_kg)) {
      s = b.score;
      break;
    }
  }
  return s + (shock_force ? config.shock_bonus : 0);
}

int coupling_score(data::Coupling coupling, const RebaAsset& asset) {
  return asset.coupling_scores[static_cast<std::size_t>(coupling)];
}

ActionLevel action_level(int grand) {
  if (grand < 1 || grand > 15) {
    throw Error(ErrorCode::OutOfRange, "grand score " + std::to_string(grand) + " outside [1, 15]");
  }
  if (grand == 1) return ActionLevel::negligible;
  if (grand <= 3) return ActionLevel::low;
  if (grand <= 7) return ActionLevel::medium;
  if (grand <= 10) return ActionLevel::high;
  return ActionLevel::very_high;
}

TableInputs FramePostureScores::table_inputs(TableId table) const noexcept {
  switch (table) {
    case TableId::A: return {{score_of(BodyPart::neck), score_of(BodyPart::leg), score_of(BodyPart::trunk)}, 3};
    case TableId::B:
      return {{score_of(BodyPart::lower_arm), score_of(BodyPart::wrist), score_of(BodyPart::upper_arm)}, 3};
    case TableId::C: return {{std::min(score_a, 12), std::min(score_b, 12), 0}, 2};
  }
  return {};
}

FramePostureScores frame_reba(const data::FrameRecord& frame, BodySide side, const RebaAsset& asset,
                              ActivityFlags activity) {
  FramePostureScores s;
  s.frame_index = frame.frame_index;
  s.side = side;
  const auto& cfg = asset.angle_bands;
  for (auto part : data::kAllBodyParts) {
    const auto joint = data::joint_for(part, side);
    auto flags = frame.modifiers[joint];
    if (part == BodyPart::neck && std::abs(frame.neck_twist_deg) > cfg.twist_threshold_deg) flags.twist = true;
    if (part == BodyPart::trunk && std::abs(frame.trunk_twist_deg) > cfg.twist_threshold_deg) flags.twist = true;
    s.joint_scores[static_cast<std::size_t>(part)] = joint_score_from_angle(joint, frame.angles[joint], flags, cfg);
  }

  s.table_a = table_lookup(asset.table(TableId::A), s.table_inputs(TableId::A).span());
  s.load_score = load_score(frame.load_kg, frame.shock_force, asset.load);
  s.score_a = s.table_a + s.load_score;

  s.table_b = table_lookup(asset.table(TableId::B), s.table_inputs(TableId::B).span());
  s.coupling_score = coupling_score(frame.coupling, asset);
  s.score_b = s.table_b + s.coupling_score;

  s.table_c = table_lookup(asset.table(TableId::C), s.table_inputs(TableId::C).span());
  s.activity_score = activity.score();
  s.grand = s.table_c + s.activity_score;
  s.action_level = asset.action_level(s.grand);
  return s;
}

std::ptrdiff_t ScoredDataset::row_of(std::uint32_t frame_index) const noexcept {
  const auto it = std::lower_bound(frame_indices.begin(), frame_indices.end(), frame_index);
  if (it == frame_indices.end() || *it != frame_index) return -1;
  return it - frame_indices.begin();
}

int ScoredDataset::joint_score(JointId joint, std::size_t row) const noexcept {
  const auto s = joint.side == data::Side::right ? BodySide::right : BodySide::left;
  return side(s)[row].score_of(joint.part);
}

ScoredDataset score_dataset(const data::Dataset& dataset, const RebaAsset& asset, const ScoreOptions& options) {
  ScoredDataset out;
  out.dataset = dataset;
  out.asset = std::make_shared<const RebaAsset>(asset);

  std::vector<std::uint32_t> candidates;
  candidates.reserve(dataset.included_count());
  for (const auto& f : dataset.frames()) {
    if (!dataset.is_excluded(f.frame_index)) candidates.push_back(f.frame_index);
  }
  const std::array<std::vector<ActivityFlags>, 2> activity = {
      compute_activity(dataset, candidates, BodySide::left, asset),
      compute_activity(dataset, candidates, BodySide::right, asset)};

  struct Slot {
    std::optional<std::array<FramePostureScores, 2>> scores;
    std::string error;
  };
  std::vector<Slot> slots(candidates.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& frame = dataset.frame(candidates[i]);
      try {
        slots[i].scores = std::array<FramePostureScores, 2>{
            frame_reba(frame, BodySide::left, asset, activity[0][i]),
            frame_reba(frame, BodySide::right, asset, activity[1][i])};
      } catch (const Error& e) {
        slots[i].error = e.what();
      }
    }
  };

  const std::size_t n = candidates.size();
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(n / 256 + 1)));
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back(work, n * w / threads, n * (w + 1) / threads);
    }
  }

  out.frame_indices.reserve(n);
  out.sides[0].reserve(n);
  out.sides[1].reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!slots[i].scores) {
      out.diagnostics.push_back({candidates[i], slots[i].error});
      continue;
    }
    out.frame_indices.push_back(candidates[i]);
    out.sides[0].push_back((*slots[i].scores)[0]);
    out.sides[1].push_back((*slots[i].scores)[1]);
  }

  out.timestamps.reserve(out.rows());
  for (auto j : data::kAllJoints) out.angles[j].reserve(out.rows());
  for (auto idx : out.frame_indices) {
    const auto& f = dataset.frame(idx);
    out.timestamps.push_back(f.timestamp_s);
    for (auto j : data::kAllJoints) out.angles[j].push_back(f.angles[j]);
  }
  return out;
}

}  // namespace ergo::reba
