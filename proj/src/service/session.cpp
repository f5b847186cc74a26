#include "ergo/service/session.hpp"

#include <chrono>
#include <fstream>

#include "ergo/error.hpp"
#include "ergo/service/codec.hpp"

namespace ergo::service {

namespace {

std::string now_utc() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const auto day = std::chrono::floor<std::chrono::days>(now);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{now - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

}  // namespace

SessionStore::SessionStore(std::filesystem::path snapshot) : snapshot_(std::move(snapshot)) {
  if (std::filesystem::exists(*snapshot_)) load();
}

Session SessionStore::create(const std::string& dataset_id) {
  auto e = std::make_shared<Entry>();
  e->session.dataset_id = dataset_id;
  e->session.created_at = now_utc();
  {
    std::unique_lock lock(map_mutex_);
    e->session.session_id = "s" + std::to_string(next_id_++);
    sessions_[e->session.session_id] = e;
  }
  if (snapshot_) save();
  return e->session;
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::optional<Session> SessionStore::get(const std::string& session_id) const {
  const auto e = find(session_id);
  if (!e) return std::nullopt;
  std::lock_guard lock(e->mutex);
  return e->session;
}

bool SessionStore::set_brushes(const std::string& session_id, select::BrushSet brushes) {
  const auto e = find(session_id);
  if (!e) return false;
  {
    std::lock_guard lock(e->mutex);
    e->session.brush_set = std::move(brushes);
  }
  if (snapshot_) save();
  return true;
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(map_mutex_);
  return sessions_.size();
}

void SessionStore::save() const {
  if (!snapshot_) return;
  json arr = json::array();
  {
    std::shared_lock lock(map_mutex_);
    for (const auto& [id, e] : sessions_) {
      std::lock_guard entry_lock(e->mutex);
      arr.push_back({{"session_id", e->session.session_id},
                     {"dataset_id", e->session.dataset_id},
                     {"created_at", e->session.created_at},
                     {"brush_set", to_json(e->session.brush_set)}});
    }
  }
  std::lock_guard file_lock(file_mutex_);
  const auto tmp = snapshot_->string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorCode::Io, "cannot write session snapshot " + tmp);
    out << json{{"sessions", arr}}.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, *snapshot_);
}

void SessionStore::load() {
  if (!snapshot_) return;
  std::ifstream in(*snapshot_);
  if (!in) throw Error(ErrorCode::Io, "cannot read session snapshot " + snapshot_->string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, std::string("malformed session snapshot: ") + e.what());
  }
  std::unique_lock lock(map_mutex_);
  sessions_.clear();
  for (const auto& s : j.value("sessions", json::array())) {
    auto e = std::make_shared<Entry>();
    e->session.session_id = s.at("session_id").get<std::string>();
    e->session.dataset_id = s.at("dataset_id").get<std::string>();
    e->session.created_at = s.value("created_at", "");
    e->session.brush_set = brush_set_from_json(s.at("brush_set"));
    const auto& id = e->session.session_id;
    if (id.size() > 1 && id[0] == 's') {
      next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(id.substr(1)) + 1);
    }
    sessions_[id] = std::move(e);
  }
}

}  // namespace ergo::service
