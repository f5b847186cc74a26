#include "ergo/data/filter.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ergo/error.hpp"

namespace ergo::data {

void FilterPolicy::validate() const {
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0)) {
    throw Error(ErrorCode::InvalidPolicy, "min_confidence must lie in [0,1]");
  }
  if (hampel_window < 3 || hampel_window % 2 == 0) {
    throw Error(ErrorCode::InvalidPolicy, "hampel_window must be an odd integer >= 3");
  }
  if (!(hampel_k > 0.0)) throw Error(ErrorCode::InvalidPolicy, "hampel_k must be positive");
}

namespace {

double median_inplace(std::vector<double>& v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

// Window is centred on i and shifted inward at the series ends so that it
// always holds exactly `width` samples.
void hampel_flags(const std::vector<double>& x, int width, double k, std::set<std::uint32_t>& out) {
  const auto n = x.size();
  const auto w = static_cast<std::size_t>(width);
  const auto half = w / 2;
  std::vector<double> buf(w);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t start = std::min(i > half ? i - half : 0, n - w);
    std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(start), w, buf.begin());
    const double med = median_inplace(buf);
    for (std::size_t j = 0; j < w; ++j) buf[j] = std::abs(x[start + j] - med);
    const double mad = std::max(median_inplace(buf), kMadFloorDeg);
    if (std::abs(x[i] - med) > k * mad) out.insert(static_cast<std::uint32_t>(i));
  }
}

}  // namespace

Dataset filter_outliers(const Dataset& dataset, const FilterPolicy& policy) {
  policy.validate();
  const auto frames = dataset.frames();
  if (static_cast<std::size_t>(policy.hampel_window) > frames.size()) {
    throw Error(ErrorCode::WindowLargerThanDataset,
                "hampel_window " + std::to_string(policy.hampel_window) + " exceeds frame count " +
                    std::to_string(frames.size()));
  }

  std::set<std::uint32_t> excluded;
  for (const auto& f : frames) {
    for (auto j : kAllJoints) {
      if (f.confidence[j] < policy.min_confidence) {
        excluded.insert(f.frame_index);
        break;
      }
    }
  }

  std::vector<double> series(frames.size());
  auto run = [&](auto&& channel) {
    for (std::size_t i = 0; i < frames.size(); ++i) series[i] = channel(frames[i]);
    hampel_flags(series, policy.hampel_window, policy.hampel_k, excluded);
  };
  for (auto j : kAllJoints) run([j](const FrameRecord& f) { return f.angles[j]; });
  run([](const FrameRecord& f) { return f.trunk_twist_deg; });
  run([](const FrameRecord& f) { return f.neck_twist_deg; });

  return dataset.with_excluded(std::move(excluded));
}

}  // namespace ergo::data
