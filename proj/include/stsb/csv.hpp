#pragma once

// Minimal comma-separated helpers shared by the report writers. Fields never
// contain commas or quotes, so no quoting is applied.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace stsb::csv {

/// Shortest decimal text that reads back to exactly `v`.
std::string format_double(double v);

/// Parses a full field as a finite double; throws ParseError naming `line`.
double parse_double(std::string_view field, std::size_t line);

std::vector<std::string_view> split_fields(std::string_view line);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// '#' lines in file order, without the leading '#'.
  std::vector<std::string> comments;
  std::vector<std::size_t> row_lines;
};

/// Reads a headed CSV. Blank lines are skipped and '#' lines collected.
Table read(std::istream& in);

}  // namespace stsb::csv
