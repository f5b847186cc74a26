#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ergo/reba/scoring.hpp"
#include "ergo/service/pipeline.hpp"
#include "ergo/service/session.hpp"

namespace httplib {
class Server;
}

namespace ergo::service {

/// Scored recordings by id. Entries are immutable once added.
class Catalog {
 public:
  void add(reba::ScoredDataset scored);
  std::shared_ptr<const reba::ScoredDataset> find(const std::string& id) const;
  std::vector<std::string> ids() const;

  /// Scores every manifest (`*.json` with a frames_csv field) in `dir`.
  /// Returns one message per manifest that failed to load.
  std::vector<std::string> load_directory(const std::filesystem::path& dir, const reba::RebaAsset& asset,
                                          const PipelineOptions& options = {});

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const reba::ScoredDataset>> datasets_;
};

/// Registers the JSON endpoints on `server`:
///   GET  /datasets
///   GET  /datasets/{id}/summary
///   GET  /datasets/{id}/tables/{A|B|C}?side=&session=
///   GET  /datasets/{id}/gauge/{joint}?session=&entries=&colored=
///   GET  /datasets/{id}/timeline?joints=&t0=&t1=&max_points=&session=
///   GET  /datasets/{id}/representatives?table=&side=
///   GET  /datasets/{id}/frames/{idx}/image
///   POST /sessions                  {"dataset_id"}
///   GET  /sessions/{id}
///   PUT  /sessions/{id}/brushes     brush set
///   GET  /sessions/{id}/selection?max_points=
/// With `session`, aggregate endpoints answer for that session's selection.
/// Errors are {"error": message} with status 400 or 404.
void mount_api(httplib::Server& server, const Catalog& catalog, SessionStore& sessions);

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = "data";
  std::optional<std::filesystem::path> sessions_file;
  std::optional<std::filesystem::path> asset;
};

/// Blocks until the server stops. Returns a process exit code.
int serve(const ServeOptions& options);

}  // namespace ergo::service
