#include "stsb/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>

#include "stsb/errors.hpp"

namespace stsb::csv {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

double parse_double(std::string_view field, std::size_t line) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(v)) {
    throw ParseError("non-numeric value '" + std::string(field) + "'", line);
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

Table read(std::istream& in) {
  Table t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.comments.emplace_back(line.substr(1));
      continue;
    }
    std::vector<std::string> fields;
    for (auto f : split_fields(line)) fields.emplace_back(f);
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw ParseError("expected " + std::to_string(t.header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    t.rows.push_back(std::move(fields));
    t.row_lines.push_back(line_no);
  }
  return t;
}

}  // namespace stsb::csv
