#include "ergo/data/validate.hpp"

#include <cmath>

namespace ergo::data {

MotionRanges MotionRanges::defaults() {
  MotionRanges r;
  for (auto j : kAllJoints) {
    switch (j.part) {
      case BodyPart::neck: r.joints[j] = {-60.0, 80.0}; break;
      case BodyPart::trunk: r.joints[j] = {-40.0, 120.0}; break;
      case BodyPart::leg: r.joints[j] = {0.0, 160.0}; break;
      case BodyPart::upper_arm: r.joints[j] = {-60.0, 180.0}; break;
      case BodyPart::lower_arm: r.joints[j] = {0.0, 180.0}; break;
      case BodyPart::wrist: r.joints[j] = {-90.0, 90.0}; break;
    }
  }
  return r;
}

std::vector<Violation> validate_frame(const FrameRecord& frame, const MotionRanges& ranges) {
  std::vector<Violation> out;
  auto check = [&](JointId j, const char* channel, double value, const AngleRange& range) {
    if (!std::isfinite(value) || !range.contains(value)) {
      out.push_back(Violation{j, channel, value, range});
    }
  };
  for (auto j : kAllJoints) check(j, "angle", frame.angles[j], ranges.joints[j]);
  check({BodyPart::trunk, Side::center}, "twist", frame.trunk_twist_deg, ranges.trunk_twist);
  check({BodyPart::neck, Side::center}, "twist", frame.neck_twist_deg, ranges.neck_twist);
  return out;
}

}  // namespace ergo::data
