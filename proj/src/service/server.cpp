#include "ergo/service/server.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <httplib.h>

#include "ergo/agg/gauge.hpp"
#include "ergo/agg/representatives.hpp"
#include "ergo/agg/table_aggregate.hpp"
#include "ergo/agg/timeline.hpp"
#include "ergo/error.hpp"
#include "ergo/select/linked.hpp"
#include "ergo/service/codec.hpp"
#include "ergo/service/report.hpp"

namespace ergo::service {

void Catalog::add(reba::ScoredDataset scored) {
  auto id = scored.dataset.id;
  auto ptr = std::make_shared<const reba::ScoredDataset>(std::move(scored));
  std::unique_lock lock(mutex_);
  datasets_[id] = std::move(ptr);
}

std::shared_ptr<const reba::ScoredDataset> Catalog::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = datasets_.find(id);
  return it == datasets_.end() ? nullptr : it->second;
}

std::vector<std::string> Catalog::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : datasets_) out.push_back(id);
  return out;
}

std::vector<std::string> Catalog::load_directory(const std::filesystem::path& dir, const reba::RebaAsset& asset,
                                                 const PipelineOptions& options) {
  std::vector<std::string> problems;
  std::vector<std::filesystem::path> manifests;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") manifests.push_back(entry.path());
  }
  std::sort(manifests.begin(), manifests.end());
  for (const auto& path : manifests) {
    std::ifstream in(path);
    const auto j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("frames_csv")) continue;
    try {
      add(run_pipeline(path, asset, options).scored);
    } catch (const std::exception& e) {
      problems.push_back(path.filename().string() + ": " + e.what());
    }
  }
  return problems;
}

namespace {

struct HttpError {
  int status;
  std::string message;
};

[[noreturn]] void not_found(const std::string& what) { throw HttpError{404, what}; }
[[noreturn]] void bad_request(const std::string& what) { throw HttpError{400, what}; }

void send(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

/// Runs a handler and maps failures onto JSON errors.
template <class F>
auto guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const HttpError& e) {
      send(res, {{"error", e.message}}, e.status);
    } catch (const Error& e) {
      send(res, {{"error", e.what()}, {"code", std::string(to_string(e.code()))}}, 400);
    } catch (const json::exception& e) {
      send(res, {{"error", std::string("malformed JSON: ") + e.what()}}, 400);
    } catch (const std::exception& e) {
      send(res, {{"error", e.what()}}, 500);
    }
  };
}

std::optional<std::string> param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  auto v = req.get_param_value(name);
  if (v.empty()) return std::nullopt;
  return v;
}

double number_param(const httplib::Request& req, const char* name, double fallback) {
  const auto v = param(req, name);
  if (!v) return fallback;
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || p != v->data() + v->size()) bad_request(std::string("bad number for ") + name);
  return out;
}

reba::BodySide side_param(const httplib::Request& req) {
  const auto v = param(req, "side");
  if (!v) return reba::BodySide::left;
  const auto s = data::parse_body_side(*v);
  if (!s) bad_request("side is left or right");
  return *s;
}

class Api {
 public:
  Api(const Catalog& catalog, SessionStore& sessions) : catalog_(catalog), sessions_(sessions) {}

  std::shared_ptr<const reba::ScoredDataset> dataset(const std::string& id) const {
    auto d = catalog_.find(id);
    if (!d) not_found("unknown dataset " + id);
    return d;
  }

  Session session(const std::string& id) const {
    auto s = sessions_.get(id);
    if (!s) not_found("unknown session " + id);
    return *s;
  }

  /// Selection of the `session` query parameter, or nullopt for full scope.
  std::optional<select::FrameIdSet> scope(const httplib::Request& req, const reba::ScoredDataset& d) const {
    const auto id = param(req, "session");
    if (!id) return std::nullopt;
    const auto s = session(*id);
    if (s.dataset_id != d.dataset.id) bad_request("session " + *id + " belongs to dataset " + s.dataset_id);
    return select::evaluate_composite(s.brush_set, d);
  }

  void datasets(const httplib::Request&, httplib::Response& res) const {
    json out = json::array();
    for (const auto& id : catalog_.ids()) {
      const auto d = catalog_.find(id);
      out.push_back({{"id", id},
                     {"frames", d->dataset.size()},
                     {"excluded", d->dataset.excluded().size()},
                     {"included", d->rows()},
                     {"fps", d->dataset.fps}});
    }
    send(res, out);
  }

  void summary(const httplib::Request& req, httplib::Response& res) const {
    send(res, to_json(build_report(*dataset(req.matches[1]))));
  }

  void table(const httplib::Request& req, httplib::Response& res) const {
    const auto d = dataset(req.matches[1]);
    const auto t = reba::parse_table_id(req.matches[2].str());
    if (!t) throw Error(ErrorCode::UnknownTable, "unknown table " + req.matches[2].str());
    send(res, to_json(agg::table_aggregate(*d, side_param(req), *t, scope(req, *d))));
  }

  void gauge(const httplib::Request& req, httplib::Response& res) const {
    const auto d = dataset(req.matches[1]);
    const auto j = data::parse_joint(req.matches[2].str());
    if (!j) throw Error(ErrorCode::UnknownJoint, "unknown joint " + req.matches[2].str());
    const bool colored = param(req, "colored").value_or("1") != "0";
    const bool entries = param(req, "entries").value_or("1") != "0";
    send(res, to_json(agg::gauge_distribution(*d, *j, scope(req, *d), colored), entries));
  }

  void timeline(const httplib::Request& req, httplib::Response& res) const {
    const auto d = dataset(req.matches[1]);
    std::vector<data::JointId> joints;
    if (const auto list = param(req, "joints")) {
      std::stringstream ss(*list);
      std::string name;
      while (std::getline(ss, name, ',')) {
        const auto j = data::parse_joint(name);
        if (!j) throw Error(ErrorCode::UnknownJoint, "unknown joint " + name);
        joints.push_back(*j);
      }
    } else {
      joints.assign(data::kAllJoints.begin(), data::kAllJoints.end());
    }
    if (d->rows() == 0) throw Error(ErrorCode::EmptyWindow, "dataset has no scored frames");
    const double t0 = number_param(req, "t0", d->timestamps.front());
    const double t1 =
        number_param(req, "t1", std::nextafter(d->timestamps.back(), std::numeric_limits<double>::infinity()));
    const double mp = number_param(req, "max_points", static_cast<double>(select::kDefaultTimelinePoints));
    if (mp < 0 || mp != std::floor(mp)) bad_request("max_points must be a non-negative integer");
    send(res, to_json(agg::timeline_window(*d, joints, t0, t1, static_cast<std::size_t>(mp), scope(req, *d))));
  }

  void representatives(const httplib::Request& req, httplib::Response& res) const {
    const auto d = dataset(req.matches[1]);
    auto t = reba::TableId::C;
    if (const auto v = param(req, "table")) {
      const auto p = reba::parse_table_id(*v);
      if (!p) throw Error(ErrorCode::UnknownTable, "unknown table " + *v);
      t = *p;
    }
    const auto side = side_param(req);
    json out = {{"table", reba::to_string(t)}, {"side", data::to_string(side)}};
    json groups = to_json(agg::representative_frames(*d, t, side));
    for (auto& g : groups) {
      g["image_ref"] = g["frame_index"].is_null()
                           ? json(nullptr)
                           : json(*d->dataset.frame(g["frame_index"].get<std::uint32_t>()).image_ref);
    }
    out["groups"] = std::move(groups);
    send(res, out);
  }

  void image(const httplib::Request& req, httplib::Response& res) const {
    const auto d = dataset(req.matches[1]);
    std::uint32_t idx = 0;
    const auto s = req.matches[2].str();
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), idx);
    if (ec != std::errc{} || p != s.data() + s.size()) bad_request("bad frame index");
    if (idx >= d->dataset.size()) not_found("no frame " + s);
    const auto& ref = d->dataset.frame(idx).image_ref;
    if (!ref) not_found("frame " + s + " has no image");
    const auto rel = std::filesystem::path(*ref).lexically_normal();
    if (rel.is_absolute() || (!rel.empty() && *rel.begin() == "..")) bad_request("image reference leaves the images directory");
    std::ifstream in(d->dataset.images_dir / rel, std::ios::binary);
    if (!in) not_found("image " + *ref + " not found");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto ext = rel.extension().string();
    const char* type = ext == ".png" ? "image/png" : (ext == ".jpg" || ext == ".jpeg") ? "image/jpeg" : "application/octet-stream";
    res.set_content(std::move(bytes), type);
  }

  void create_session(const httplib::Request& req, httplib::Response& res) const {
    const auto body = json::parse(req.body);
    if (!body.is_object() || !body.contains("dataset_id") || !body["dataset_id"].is_string()) {
      bad_request("body must be {\"dataset_id\": ...}");
    }
    const auto id = body["dataset_id"].get<std::string>();
    dataset(id);
    send(res, session_json(sessions_.create(id)), 201);
  }

  void get_session(const httplib::Request& req, httplib::Response& res) const {
    send(res, session_json(session(req.matches[1])));
  }

  void put_brushes(const httplib::Request& req, httplib::Response& res) const {
    const auto s = session(req.matches[1]);
    const auto d = dataset(s.dataset_id);
    auto set = brush_set_from_json(json::parse(req.body));
    select::validate(set, *d->asset);
    if (!sessions_.set_brushes(s.session_id, set)) not_found("unknown session " + s.session_id);
    auto out = session_json(session(s.session_id));
    out["selected_total"] = select::evaluate_composite(set, *d).size();
    send(res, out);
  }

  void selection(const httplib::Request& req, httplib::Response& res) const {
    const auto s = session(req.matches[1]);
    const auto d = dataset(s.dataset_id);
    const auto ids = select::evaluate_composite(s.brush_set, *d);
    const double mp = number_param(req, "max_points", static_cast<double>(select::kDefaultTimelinePoints));
    if (mp < 2 || mp != std::floor(mp)) bad_request("max_points must be an integer >= 2");
    send(res, {{"session_id", s.session_id},
               {"dataset_id", s.dataset_id},
               {"frame_ids", to_json(ids)},
               {"linked_counts", to_json(select::linked_counts(ids, *d, static_cast<std::size_t>(mp)))}});
  }

 private:
  static json session_json(const Session& s) {
    return {{"session_id", s.session_id},
            {"dataset_id", s.dataset_id},
            {"created_at", s.created_at},
            {"brush_set", to_json(s.brush_set)}};
  }

  const Catalog& catalog_;
  SessionStore& sessions_;
};

}  // namespace

void mount_api(httplib::Server& server, const Catalog& catalog, SessionStore& sessions) {
  auto api = std::make_shared<Api>(catalog, sessions);
  auto bind = [api](void (Api::*m)(const httplib::Request&, httplib::Response&) const) {
    return guarded([api, m](const httplib::Request& req, httplib::Response& res) { ((*api).*m)(req, res); });
  };
  server.Get("/datasets", bind(&Api::datasets));
  server.Get(R"(/datasets/([^/]+)/summary)", bind(&Api::summary));
  server.Get(R"(/datasets/([^/]+)/tables/([^/]+))", bind(&Api::table));
  server.Get(R"(/datasets/([^/]+)/gauge/([^/]+))", bind(&Api::gauge));
  server.Get(R"(/datasets/([^/]+)/timeline)", bind(&Api::timeline));
  server.Get(R"(/datasets/([^/]+)/representatives)", bind(&Api::representatives));
  server.Get(R"(/datasets/([^/]+)/frames/([^/]+)/image)", bind(&Api::image));
  server.Post("/sessions", bind(&Api::create_session));
  server.Get(R"(/sessions/([^/]+))", bind(&Api::get_session));
  server.Put(R"(/sessions/([^/]+)/brushes)", bind(&Api::put_brushes));
  server.Get(R"(/sessions/([^/]+)/selection)", bind(&Api::selection));
}

int serve(const ServeOptions& options) {
  try {
    const auto asset = options.asset ? reba::RebaAsset::from_file(*options.asset) : reba::RebaAsset::standard();
    asset.require_valid();
    Catalog catalog;
    if (!std::filesystem::is_directory(options.data_dir)) {
      std::cerr << "data directory not found: " << options.data_dir << '\n';
      return 1;
    }
    for (const auto& p : catalog.load_directory(options.data_dir, asset)) std::cerr << "skipped " << p << '\n';
    SessionStore sessions = options.sessions_file ? SessionStore(*options.sessions_file) : SessionStore();
    httplib::Server server;
    mount_api(server, catalog, sessions);
    std::cerr << "serving " << catalog.ids().size() << " dataset(s) on " << options.host << ':' << options.port << '\n';
    if (!server.listen(options.host, options.port)) {
      std::cerr << "cannot listen on " << options.host << ':' << options.port << '\n';
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ergo::service
