#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nlsim {

/// Shortest decimal that round-trips to the same double; never
/// locale-dependent.
std::string FormatDouble(double v);

/// Parses a full double from `text` (locale-independent). Throws on garbage.
double ParseDouble(std::string_view text);
long long ParseInteger(std::string_view text);

/// Splits on a single-character delimiter, trimming surrounding blanks.
std::vector<std::string_view> SplitFields(std::string_view line, char delim);

}  // namespace nlsim
