#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ssmdrift::csv
{

/// Shortest round-trip-safe text: 17 significant digits, general format.
std::string format(double v);

/// Split on commas; surrounding blanks of each field are trimmed.
std::vector<std::string_view> split(std::string_view line);

/// Strict parse of a whole field; throws ParseError tagged with `line_no`.
double parse_double(std::string_view field, std::size_t line_no);
long parse_int(std::string_view field, std::size_t line_no);

/// True for blank lines and `#` comments.
bool is_skippable(std::string_view line);

} // namespace ssmdrift::csv
