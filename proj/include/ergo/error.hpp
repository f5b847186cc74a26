#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ergo {

enum class ErrorCode {
  MissingManifest,
  SchemaMismatch,
  NonMonotoneTimestamp,
  WindowLargerThanDataset,
  InvalidPolicy,
  UnknownJoint,
  AngleOutsideConfiguredBands,
  IndexOutOfRange,
  OutOfRange,
  UnknownTable,
  EmptyWindow,
  InvalidSpec,
  InvalidAsset,
  AssetInvariant,
  InvalidArgument,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A CSV/JSON field that does not match the expected schema. `row` is the
/// 1-based line number in the source file (the header is line 1); 0 when the
/// problem is not tied to a row.
class SchemaMismatch : public Error {
 public:
  SchemaMismatch(std::string column, std::size_t row, const std::string& detail);

  const std::string& column() const noexcept { return column_; }
  std::size_t row() const noexcept { return row_; }

 private:
  std::string column_;
  std::size_t row_;
};

class NonMonotoneTimestamp : public Error {
 public:
  explicit NonMonotoneTimestamp(std::size_t row);
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Raised when a table asset fails one of its invariants. Carries one
/// human-readable line per offending cell or rule.
class AssetInvariantError : public Error {
 public:
  explicit AssetInvariantError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace ergo
