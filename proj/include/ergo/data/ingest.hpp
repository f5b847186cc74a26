#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ergo/data/dataset.hpp"
#include "ergo/data/validate.hpp"

namespace ergo::data {

/// Frames CSV column order, fixed. 30 columns: index, timestamp, twelve
/// angle channels, eleven modifier flags, load, shock, coupling, mean
/// detection confidence, image reference.
std::span<const std::string> frames_csv_columns();

struct Manifest {
  std::string id;
  std::filesystem::path frames_csv;
  std::filesystem::path images_dir;
  double fps = 30.0;
  std::map<std::string, std::string> meta;
};

Manifest read_manifest(const std::filesystem::path& manifest_path);
void write_manifest(const std::filesystem::path& manifest_path, const Manifest& manifest);

struct LoadOptions {
  /// Skip bad rows (with diagnostics) instead of failing on the first one.
  bool lenient = false;
  MotionRanges ranges = MotionRanges::defaults();
};

struct RowDiagnostic {
  std::size_t row = 0;  // 1-based file line, header is line 1
  std::string column;
  std::string message;
};

struct LoadResult {
  Dataset dataset;
  std::vector<RowDiagnostic> diagnostics;
};

/// Throws MissingManifest, SchemaMismatch or NonMonotoneTimestamp.
LoadResult load_dataset(const std::filesystem::path& manifest_path, const LoadOptions& options = {});

/// Parses a frames CSV stream. `fps` fills in missing timestamps.
LoadResult read_frames_csv(std::istream& in, std::string id, double fps,
                           const LoadOptions& options = {});

void write_frames_csv(std::ostream& out, const Dataset& dataset);

}  // namespace ergo::data
