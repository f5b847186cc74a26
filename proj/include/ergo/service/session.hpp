#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "ergo/select/brush.hpp"

namespace ergo::service {

struct Session {
  std::string session_id;
  std::string dataset_id;
  select::BrushSet brush_set;
  /// ISO 8601, UTC.
  std::string created_at;
};

/// In-memory sessions. Each session has its own lock; the map lock is only
/// held to find or insert an entry. With a snapshot path every mutation
/// rewrites the JSON file.
class SessionStore {
 public:
  SessionStore() = default;
  explicit SessionStore(std::filesystem::path snapshot);

  Session create(const std::string& dataset_id);
  std::optional<Session> get(const std::string& session_id) const;
  /// Returns false when the session does not exist.
  bool set_brushes(const std::string& session_id, select::BrushSet brushes);
  std::size_t size() const;

  void save() const;
  void load();

 private:
  struct Entry {
    mutable std::mutex mutex;
    Session session;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;

  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 1;
  std::optional<std::filesystem::path> snapshot_;
  mutable std::mutex file_mutex_;
};

}  // namespace ergo::service
