#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ergo::data {

enum class BodyPart : std::uint8_t { neck, trunk, leg, upper_arm, lower_arm, wrist };
enum class Side : std::uint8_t { left, right, center };

/// Scoring side. REBA is evaluated once per body side; neck and trunk are
/// shared between both evaluations.
enum class BodySide : std::uint8_t { left, right };

inline constexpr std::size_t kBodyPartCount = 6;
inline constexpr std::size_t kJointCount = 10;

inline constexpr std::array<BodyPart, kBodyPartCount> kAllBodyParts = {
    BodyPart::neck,      BodyPart::trunk,     BodyPart::leg,
    BodyPart::upper_arm, BodyPart::lower_arm, BodyPart::wrist};

inline constexpr std::array<BodySide, 2> kBothSides = {BodySide::left, BodySide::right};

constexpr bool is_axial(BodyPart p) noexcept {
  return p == BodyPart::neck || p == BodyPart::trunk;
}

struct JointId {
  BodyPart part = BodyPart::neck;
  Side side = Side::center;

  /// Neck and trunk are always center; limbs are always left or right.
  constexpr bool valid() const noexcept {
    return is_axial(part) ? side == Side::center : side != Side::center;
  }

  /// Dense index in [0, kJointCount). Only meaningful for valid ids.
  constexpr std::size_t slot() const noexcept {
    if (part == BodyPart::neck) return 0;
    if (part == BodyPart::trunk) return 1;
    const auto limb = static_cast<std::size_t>(part) - 2;
    return 2 + limb * 2 + (side == Side::right ? 1 : 0);
  }

  friend constexpr auto operator<=>(const JointId&, const JointId&) = default;
};

constexpr JointId joint_for(BodyPart part, BodySide side) noexcept {
  if (is_axial(part)) return {part, Side::center};
  return {part, side == BodySide::left ? Side::left : Side::right};
}

inline constexpr std::array<JointId, kJointCount> kAllJoints = {
    JointId{BodyPart::neck, Side::center},     JointId{BodyPart::trunk, Side::center},
    JointId{BodyPart::leg, Side::left},        JointId{BodyPart::leg, Side::right},
    JointId{BodyPart::upper_arm, Side::left},  JointId{BodyPart::upper_arm, Side::right},
    JointId{BodyPart::lower_arm, Side::left},  JointId{BodyPart::lower_arm, Side::right},
    JointId{BodyPart::wrist, Side::left},      JointId{BodyPart::wrist, Side::right}};

std::string_view to_string(BodyPart part) noexcept;
std::string_view to_string(Side side) noexcept;
std::string_view to_string(BodySide side) noexcept;

/// "upper_arm_right", "neck_center", ...
std::string to_string(JointId joint);

std::optional<BodyPart> parse_body_part(std::string_view text) noexcept;
std::optional<BodySide> parse_body_side(std::string_view text) noexcept;

/// Accepts "<part>_<side>" and, for neck/trunk, the bare part name.
std::optional<JointId> parse_joint(std::string_view text) noexcept;

/// Fixed-size map keyed by JointId.
template <class T>
class JointMap {
 public:
  JointMap() = default;
  explicit JointMap(const T& fill) { values_.fill(fill); }

  T& operator[](JointId j) noexcept { return values_[j.slot()]; }
  const T& operator[](JointId j) const noexcept { return values_[j.slot()]; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const JointMap&, const JointMap&) = default;

 private:
  std::array<T, kJointCount> values_{};
};

/// Fixed-size map keyed by BodyPart.
template <class T>
class BodyPartMap {
 public:
  T& operator[](BodyPart p) noexcept { return values_[static_cast<std::size_t>(p)]; }
  const T& operator[](BodyPart p) const noexcept { return values_[static_cast<std::size_t>(p)]; }

  friend bool operator==(const BodyPartMap&, const BodyPartMap&) = default;

 private:
  std::array<T, kBodyPartCount> values_{};
};

}  // namespace ergo::data
