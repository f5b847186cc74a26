#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ergo::data::csv {

/// Splits one CSV record. Double-quoted fields may contain commas and
/// doubled quotes; no embedded newlines.
std::vector<std::string> split_line(std::string_view line);

/// Quotes a field only when it needs it.
std::string quote(std::string_view field);

/// Fixed-point with at most four decimals, trailing zeros trimmed.
std::string format_decimal(double value);

/// Strict parse: the whole token must be consumed.
std::optional<double> parse_double(std::string_view token);
std::optional<long long> parse_integer(std::string_view token);
std::optional<bool> parse_flag(std::string_view token);

}  // namespace ergo::data::csv
