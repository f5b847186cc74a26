// ergoexplorer: batch scoring, reports, synthetic recordings and the HTTP
// service.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ergo/error.hpp"
#include "ergo/reba/asset.hpp"
#include "ergo/service/pipeline.hpp"
#include "ergo/service/report.hpp"
#include "ergo/service/server.hpp"
#include "ergo/service/synthetic.hpp"

namespace fs = std::filesystem;
using namespace ergo;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitAsset = 3;

int run_score(const fs::path& manifest, const std::optional<fs::path>& asset_path,
              const service::PipelineOptions& options, const fs::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  reba::RebaAsset asset;
  try {
    asset = asset_path ? reba::RebaAsset::from_file(*asset_path) : reba::RebaAsset::standard();
    asset.require_valid();
  } catch (const AssetInvariantError& e) {
    std::cerr << "asset invariant violated:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
    return kExitAsset;
  } catch (const Error& e) {
    std::cerr << "asset error: " << e.what() << '\n';
    return kExitAsset;
  }

  service::PipelineResult result;
  try {
    result = service::run_pipeline(manifest, asset, options);
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitValidation;
  }
  for (const auto& d : result.load_diagnostics) {
    std::cerr << "skipped line " << d.row << " (" << d.column << "): " << d.message << '\n';
  }
  for (const auto& d : result.scored.diagnostics) {
    std::cerr << "unscored frame " << d.frame_index << ": " << d.message << '\n';
  }

  auto report = service::build_report(result.scored);
  const auto& id = result.scored.dataset.id;
  fs::create_directories(out_dir);
  const auto csv_path = out_dir / (id + "_scored.csv");
  const auto report_path = out_dir / (id + "_report.json");
  {
    std::ofstream csv(csv_path);
    if (!csv) {
      std::cerr << "cannot write " << csv_path << '\n';
      return 1;
    }
    service::write_scored_csv(csv, result.scored);
  }
  report.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot write " << report_path << '\n';
      return 1;
    }
    out << service::to_json(report).dump(2) << '\n';
  }
  std::cout << id << ": " << report.included_frames << " scored, " << report.excluded_frames << " excluded, "
            << report.unscored_frames << " unscored in " << report.runtime_ms << " ms\n"
            << "wrote " << csv_path.string() << "\n"
            << "wrote " << report_path.string() << '\n';
  return 0;
}

int run_report(const fs::path& scored) {
  std::ifstream in(scored);
  if (!in) {
    std::cerr << "cannot read " << scored << '\n';
    return kExitValidation;
  }
  try {
    const auto start = std::chrono::steady_clock::now();
    auto r = service::report_from_scored_csv(in);
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::cout << service::to_json(r).dump(2) << '\n';
    return 0;
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitValidation;
  }
}

int run_gen(const fs::path& spec_path, const std::optional<std::uint64_t>& seed, const fs::path& out_dir) {
  try {
    std::ifstream in(spec_path);
    if (!in) throw Error(ErrorCode::InvalidSpec, "cannot read " + spec_path.string());
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::InvalidSpec, "spec is not valid JSON");
    auto spec = service::synthetic_spec_from_json(j);
    if (seed) spec.seed = *seed;
    const auto ds = service::generate_synthetic(spec);
    std::cout << service::write_synthetic(ds, out_dir).string() << '\n';
    return 0;
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ergonomic risk scoring and linked-view queries over joint-angle recordings"};
  app.require_subcommand(1);

  auto* score = app.add_subcommand("score", "Score a recording and write the scored CSV and report");
  std::string manifest;
  std::string asset_path;
  std::string out_dir = ".";
  service::PipelineOptions options;
  score->add_option("manifest", manifest, "Recording manifest (JSON)")->required();
  score->add_option("--asset", asset_path, "Score table asset (JSON); default is the bundled standard");
  score->add_option("--min-confidence", options.filter.min_confidence, "Exclude frames below this confidence");
  score->add_option("--hampel-window", options.filter.hampel_window, "Outlier filter window (frames, odd)");
  score->add_option("--hampel-k", options.filter.hampel_k, "Outlier threshold in MADs");
  score->add_flag("--lenient", options.load.lenient, "Skip malformed rows instead of failing");
  score->add_option("--threads", options.threads, "Scoring threads")->check(CLI::Range(1u, 256u));
  score->add_option("--out", out_dir, "Output directory");

  auto* report = app.add_subcommand("report", "Rebuild the report of a scored CSV");
  std::string scored_path;
  report->add_option("scored", scored_path, "Scored CSV")->required();

  auto* gen = app.add_subcommand("gen", "Generate a synthetic recording from a JSON spec");
  std::string spec_path;
  std::uint64_t seed = 0;
  std::string gen_out = ".";
  gen->add_option("spec", spec_path, "Generator spec (JSON)")->required();
  auto* seed_opt = gen->add_option("--seed", seed, "Override the spec seed");
  gen->add_option("--out", gen_out, "Output directory");

  auto* serve = app.add_subcommand("serve", "Serve the HTTP query API");
  service::ServeOptions serve_options;
  std::string sessions_file;
  std::string serve_asset;
  serve->add_option("--port", serve_options.port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", serve_options.host, "Bind address");
  serve->add_option("--data", serve_options.data_dir, "Directory of recording manifests");
  serve->add_option("--sessions", sessions_file, "Persist sessions to this JSON file");
  serve->add_option("--asset", serve_asset, "Score table asset (JSON)");

  CLI11_PARSE(app, argc, argv);

  if (*score) {
    return run_score(manifest, asset_path.empty() ? std::nullopt : std::optional<fs::path>(asset_path), options,
                     out_dir);
  }
  if (*report) return run_report(scored_path);
  if (*gen) return run_gen(spec_path, *seed_opt ? std::optional<std::uint64_t>(seed) : std::nullopt, gen_out);
  if (*serve) {
    if (!sessions_file.empty()) serve_options.sessions_file = sessions_file;
    if (!serve_asset.empty()) serve_options.asset = serve_asset;
    return service::serve(serve_options);
  }
  return 0;
}
