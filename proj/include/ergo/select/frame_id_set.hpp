#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace ergo::select {

/// Sorted, duplicate-free set of frame indices.
class FrameIdSet {
 public:
  FrameIdSet() = default;
  explicit FrameIdSet(std::vector<std::uint32_t> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }
  FrameIdSet(std::initializer_list<std::uint32_t> ids) : FrameIdSet(std::vector<std::uint32_t>(ids)) {}

  std::span<const std::uint32_t> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(std::uint32_t id) const noexcept { return std::binary_search(ids_.begin(), ids_.end(), id); }

  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

  FrameIdSet unite(const FrameIdSet& other) const {
    std::vector<std::uint32_t> out;
    out.reserve(size() + other.size());
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }

  FrameIdSet intersect(const FrameIdSet& other) const {
    std::vector<std::uint32_t> out;
    std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }

  bool is_subset_of(const FrameIdSet& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
  }

  static FrameIdSet from_sorted(std::vector<std::uint32_t> ids) {
    FrameIdSet s;
    s.ids_ = std::move(ids);
    return s;
  }

  friend bool operator==(const FrameIdSet&, const FrameIdSet&) = default;

 private:
  std::vector<std::uint32_t> ids_;
};

}  // namespace ergo::select
