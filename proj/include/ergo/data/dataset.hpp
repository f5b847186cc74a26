#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ergo/data/frame.hpp"

namespace ergo::data {

/// An immutable recording. Frames are shared between copies; filtering
/// produces a new value that differs only in its excluded set.
class Dataset {
 public:
  Dataset();
  Dataset(std::string id, std::vector<FrameRecord> frames, double fps);

  std::string id;
  double fps = 30.0;
  std::map<std::string, std::string> meta;
  std::filesystem::path images_dir;

  std::span<const FrameRecord> frames() const noexcept { return *frames_; }
  std::size_t size() const noexcept { return frames_->size(); }
  bool empty() const noexcept { return frames_->empty(); }

  /// Frame indices are contiguous from 0 after ingestion, so the index is
  /// also the position in frames().
  const FrameRecord& frame(std::uint32_t frame_index) const { return frames_->at(frame_index); }

  const std::set<std::uint32_t>& excluded() const noexcept { return *excluded_; }
  bool is_excluded(std::uint32_t frame_index) const { return excluded_->contains(frame_index); }
  std::size_t included_count() const noexcept { return size() - excluded_->size(); }

  /// Copy sharing the frames with a replaced excluded set. Indices not
  /// present in the dataset are dropped.
  Dataset with_excluded(std::set<std::uint32_t> excluded) const;

 private:
  std::shared_ptr<const std::vector<FrameRecord>> frames_;
  std::shared_ptr<const std::set<std::uint32_t>> excluded_;
};

}  // namespace ergo::data
