#pragma once

#include <string>
#include <vector>

#include "ergo/data/frame.hpp"

namespace ergo::data {

/// Valid motion range per joint plus the two twist channels.
struct MotionRanges {
  JointMap<AngleRange> joints;
  AngleRange trunk_twist{-90.0, 90.0};
  AngleRange neck_twist{-90.0, 90.0};

  /// Ranges matching the bundled REBA asset.
  static MotionRanges defaults();

  friend bool operator==(const MotionRanges&, const MotionRanges&) = default;
};

struct Violation {
  JointId joint;
  /// "angle" or "twist".
  std::string channel;
  double value = 0.0;
  AngleRange range;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// One Violation per non-finite or out-of-range angle, in joint order.
std::vector<Violation> validate_frame(const FrameRecord& frame, const MotionRanges& ranges);

}  // namespace ergo::data
