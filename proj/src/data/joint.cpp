#include "ergo/data/joint.hpp"

namespace ergo::data {

std::string_view to_string(BodyPart part) noexcept {
  switch (part) {
    case BodyPart::neck: return "neck";
    case BodyPart::trunk: return "trunk";
    case BodyPart::leg: return "leg";
    case BodyPart::upper_arm: return "upper_arm";
    case BodyPart::lower_arm: return "lower_arm";
    case BodyPart::wrist: return "wrist";
  }
  return "?";
}

std::string_view to_string(Side side) noexcept {
  switch (side) {
    case Side::left: return "left";
    case Side::right: return "right";
    case Side::center: return "center";
  }
  return "?";
}

std::string_view to_string(BodySide side) noexcept {
  return side == BodySide::left ? "left" : "right";
}

std::string to_string(JointId joint) {
  std::string out{to_string(joint.part)};
  out += '_';
  out += to_string(joint.side);
  return out;
}

std::optional<BodyPart> parse_body_part(std::string_view text) noexcept {
  for (auto p : kAllBodyParts) {
    if (to_string(p) == text) return p;
  }
  // Column and table attribute spellings.
  if (text == "legs" || text == "knee") return BodyPart::leg;
  return std::nullopt;
}

std::optional<BodySide> parse_body_side(std::string_view text) noexcept {
  if (text == "left") return BodySide::left;
  if (text == "right") return BodySide::right;
  return std::nullopt;
}

std::optional<JointId> parse_joint(std::string_view text) noexcept {
  if (auto bare = parse_body_part(text); bare && is_axial(*bare)) {
    return JointId{*bare, Side::center};
  }
  const auto cut = text.rfind('_');
  if (cut == std::string_view::npos) return std::nullopt;
  const auto part = parse_body_part(text.substr(0, cut));
  if (!part) return std::nullopt;
  const auto side_text = text.substr(cut + 1);
  Side side;
  if (side_text == "left") {
    side = Side::left;
  } else if (side_text == "right") {
    side = Side::right;
  } else if (side_text == "center") {
    side = Side::center;
  } else {
    return std::nullopt;
  }
  JointId id{*part, side};
  if (!id.valid()) return std::nullopt;
  return id;
}

}  // namespace ergo::data
