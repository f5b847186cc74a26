#include "ergo/service/pipeline.hpp"

namespace ergo::service {

PipelineResult run_pipeline(const data::Dataset& dataset, const reba::RebaAsset& asset,
                            const PipelineOptions& options) {
  options.filter.validate();
  const auto filtered = dataset.empty() ? dataset : data::filter_outliers(dataset, options.filter);
  return {reba::score_dataset(filtered, asset, {options.threads}), {}};
}

PipelineResult run_pipeline(const std::filesystem::path& manifest, const reba::RebaAsset& asset,
                            const PipelineOptions& options) {
  auto loaded = data::load_dataset(manifest, options.load);
  auto out = run_pipeline(loaded.dataset, asset, options);
  out.load_diagnostics = std::move(loaded.diagnostics);
  return out;
}

}  // namespace ergo::service
