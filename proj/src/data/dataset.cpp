#include "ergo/data/dataset.hpp"

#include "ergo/error.hpp"

namespace ergo::data {

std::string_view to_string(Coupling c) noexcept {
  switch (c) {
    case Coupling::good: return "good";
    case Coupling::fair: return "fair";
    case Coupling::poor: return "poor";
    case Coupling::unacceptable: return "unacceptable";
  }
  return "?";
}

std::optional<Coupling> parse_coupling(std::string_view text) noexcept {
  if (text == "good") return Coupling::good;
  if (text == "fair") return Coupling::fair;
  if (text == "poor") return Coupling::poor;
  if (text == "unacceptable") return Coupling::unacceptable;
  return std::nullopt;
}

Dataset::Dataset()
    : frames_(std::make_shared<const std::vector<FrameRecord>>()),
      excluded_(std::make_shared<const std::set<std::uint32_t>>()) {}

Dataset::Dataset(std::string id_, std::vector<FrameRecord> frames, double fps_)
    : id(std::move(id_)),
      fps(fps_),
      frames_(std::make_shared<const std::vector<FrameRecord>>(std::move(frames))),
      excluded_(std::make_shared<const std::set<std::uint32_t>>()) {
  const auto& f = *frames_;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].frame_index != i) {
      throw Error(ErrorCode::InvalidArgument,
                  "frame_index must be contiguous from 0; position " + std::to_string(i) +
                      " holds " + std::to_string(f[i].frame_index));
    }
    // Same row numbering as the CSV reader: header is line 1.
    if (i > 0 && !(f[i].timestamp_s > f[i - 1].timestamp_s)) throw NonMonotoneTimestamp(i + 2);
  }
}

Dataset Dataset::with_excluded(std::set<std::uint32_t> excluded) const {
  Dataset out = *this;
  std::erase_if(excluded, [n = size()](std::uint32_t i) { return i >= n; });
  out.excluded_ = std::make_shared<const std::set<std::uint32_t>>(std::move(excluded));
  return out;
}

}  // namespace ergo::data
