#include "ergo/reba/activity.hpp"

#include <cmath>
#include <deque>

namespace ergo::reba {

namespace {

// Longest trailing run with max - min <= span, via monotone deques.
class SpanTracker {
 public:
  explicit SpanTracker(double span) : span_(span) {}

  /// Pushes sample i and returns the first index of the trailing run.
  std::size_t push(std::size_t i, const std::vector<double>& x) {
    while (!maxq_.empty() && x[maxq_.back()] <= x[i]) maxq_.pop_back();
    maxq_.push_back(i);
    while (!minq_.empty() && x[minq_.back()] >= x[i]) minq_.pop_back();
    minq_.push_back(i);
    while (x[maxq_.front()] - x[minq_.front()] > span_) {
      start_ = std::min(maxq_.front(), minq_.front()) + 1;
      while (maxq_.front() < start_) maxq_.pop_front();
      while (minq_.front() < start_) minq_.pop_front();
    }
    return start_;
  }

 private:
  double span_;
  std::size_t start_ = 0;
  std::deque<std::size_t> maxq_;
  std::deque<std::size_t> minq_;
};

int band_index(const std::vector<Band>& bands, double a) {
  for (std::size_t b = 0; b < bands.size(); ++b) {
    if (bands[b].contains(a)) return static_cast<int>(b);
  }
  return -1;
}

}  // namespace

std::vector<ActivityFlags> compute_activity(const data::Dataset& dataset, std::span<const std::uint32_t> rows,
                                            BodySide side, const RebaAsset& asset) {
  const auto n = rows.size();
  std::vector<ActivityFlags> out(n);
  if (n == 0) return out;
  const auto& cfg = asset.activity;
  const auto frames = dataset.frames();

  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = frames[rows[i]].timestamp_s;

  std::vector<double> x(n);
  for (auto part : data::kAllBodyParts) {
    const auto joint = data::joint_for(part, side);
    for (std::size_t i = 0; i < n; ++i) x[i] = frames[rows[i]].angles[joint];
    const auto& bands = asset.angle_bands.bands[part];

    SpanTracker tracker(2.0 * cfg.static_tolerance_deg);
    // One queue of crossing times per boundary (boundary b sits between
    // bands b and b+1).
    std::vector<std::deque<double>> crossings(bands.empty() ? 0 : bands.size() - 1);
    std::deque<double> rapid;
    int prev_band = band_index(bands, x[0]);

    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t start = tracker.push(i, x);
      if (t[i] - t[start] > cfg.window_s) out[i].static_posture = true;

      if (i > 0) {
        const int band = band_index(bands, x[i]);
        if (band >= 0 && prev_band >= 0 && band != prev_band) {
          for (int b = std::min(band, prev_band); b < std::max(band, prev_band); ++b) {
            crossings[static_cast<std::size_t>(b)].push_back(t[i]);
          }
        }
        if (band >= 0) prev_band = band;
        if (std::abs(x[i] - x[i - 1]) > cfg.rapid_change_deg) rapid.push_back(t[i]);
      }

      const double horizon = t[i] - cfg.window_s;
      for (auto& q : crossings) {
        while (!q.empty() && q.front() <= horizon) q.pop_front();
        if (static_cast<int>(q.size()) > cfg.repeat_crossings) out[i].repeated = true;
      }
      while (!rapid.empty() && rapid.front() <= horizon) rapid.pop_front();
      if (!rapid.empty()) out[i].rapid_change = true;
    }
  }
  return out;
}

}  // namespace ergo::reba
