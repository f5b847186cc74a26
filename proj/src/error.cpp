#include "ergo/error.hpp"

namespace ergo {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingManifest: return "MissingManifest";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::NonMonotoneTimestamp: return "NonMonotoneTimestamp";
    case ErrorCode::WindowLargerThanDataset: return "WindowLargerThanDataset";
    case ErrorCode::InvalidPolicy: return "InvalidPolicy";
    case ErrorCode::UnknownJoint: return "UnknownJoint";
    case ErrorCode::AngleOutsideConfiguredBands: return "AngleOutsideConfiguredBands";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnknownTable: return "UnknownTable";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidAsset: return "InvalidAsset";
    case ErrorCode::AssetInvariant: return "AssetInvariant";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

SchemaMismatch::SchemaMismatch(std::string column, std::size_t row, const std::string& detail)
    : Error(ErrorCode::SchemaMismatch,
            "schema mismatch in column '" + column + "' at row " + std::to_string(row) +
                (detail.empty() ? std::string{} : ": " + detail)),
      column_(std::move(column)),
      row_(row) {}

NonMonotoneTimestamp::NonMonotoneTimestamp(std::size_t row)
    : Error(ErrorCode::NonMonotoneTimestamp,
            "timestamp does not increase at row " + std::to_string(row)),
      row_(row) {}

namespace {
std::string join_violations(const std::vector<std::string>& v) {
  std::string out = "table asset violates its invariants";
  for (const auto& line : v) {
    out += "\n  ";
    out += line;
  }
  return out;
}
}  // namespace

AssetInvariantError::AssetInvariantError(std::vector<std::string> violations)
    : Error(ErrorCode::AssetInvariant, join_violations(violations)),
      violations_(std::move(violations)) {}

}  // namespace ergo
