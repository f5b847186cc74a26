#pragma once

#include "ergo/data/dataset.hpp"

namespace ergo::data {

/// MAD used in place of a zero MAD so that a flat window still has a finite
/// rejection threshold.
inline constexpr double kMadFloorDeg = 0.5;

struct FilterPolicy {
  double min_confidence = 0.5;
  int hampel_window = 7;
  double hampel_k = 3.0;

  /// Throws Error(InvalidPolicy).
  void validate() const;
};

/// Flags frames with low detection confidence or with any angle channel
/// failing a Hampel test (|x - median| > k * max(MAD, floor) over a sliding
/// window). Frames are never modified. Throws WindowLargerThanDataset when
/// the window exceeds the frame count.
Dataset filter_outliers(const Dataset& dataset, const FilterPolicy& policy);

}  // namespace ergo::data
