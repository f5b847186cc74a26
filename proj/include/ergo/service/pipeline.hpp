#pragma once

#include <filesystem>
#include <vector>

#include "ergo/data/filter.hpp"
#include "ergo/data/ingest.hpp"
#include "ergo/reba/scoring.hpp"

namespace ergo::service {

struct PipelineOptions {
  data::LoadOptions load;
  data::FilterPolicy filter;
  unsigned threads = 1;
};

struct PipelineResult {
  reba::ScoredDataset scored;
  std::vector<data::RowDiagnostic> load_diagnostics;
};

/// Load, flag outliers and score. An empty recording skips the filter.
PipelineResult run_pipeline(const std::filesystem::path& manifest, const reba::RebaAsset& asset,
                            const PipelineOptions& options = {});
PipelineResult run_pipeline(const data::Dataset& dataset, const reba::RebaAsset& asset,
                            const PipelineOptions& options = {});

}  // namespace ergo::service
