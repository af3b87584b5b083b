#include "stsb/scores.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>

#include "stsb/csv.hpp"
#include "stsb/errors.hpp"

namespace stsb {
namespace {

std::optional<LabelRange> declared_range(const std::vector<std::string>& comments) {
  for (const auto& c : comments) {
    auto pos = c.find("range=");
    if (pos == std::string::npos) continue;
    auto value = c.substr(pos + 6);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\t')) value.pop_back();
    if (value == "0..1") return LabelRange::unit;
    if (value == "0..5") return LabelRange::five;
    throw ParseError("unknown score range declaration '" + value + "'");
  }
  return std::nullopt;
}

std::size_t parse_id(std::string_view s, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad id '" + std::string(s) + "'", line);
  }
  return v;
}

}  // namespace

ScoreColumn load_score_column(std::istream& in, std::size_t expected_n,
                              const std::string& model_name, Split split, LabelRange active) {
  const auto table = csv::read(in);
  if (table.header != std::vector<std::string>{"id", "score"}) {
    throw ParseError("score file for " + model_name + " must have header 'id,score'");
  }
  const auto range = declared_range(table.comments).value_or(active);
  if (table.rows.size() != expected_n) {
    throw AlignmentError("score file for " + model_name + " (" + std::string(to_string(split)) +
                         ") has " + std::to_string(table.rows.size()) + " rows, expected " +
                         std::to_string(expected_n));
  }
  ScoreColumn col{model_name, split, std::vector<double>(expected_n, 0.0)};
  std::vector<bool> seen(expected_n, false);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto line = table.row_lines[r];
    const auto id = parse_id(table.rows[r][0], line);
    const double v = csv::parse_double(table.rows[r][1], line);
    if (id >= expected_n) {
      throw AlignmentError("score id " + std::to_string(id) + " out of range for " + model_name);
    }
    if (seen[id]) {
      throw AlignmentError("duplicate score id " + std::to_string(id) + " for " + model_name);
    }
    seen[id] = true;
    col.values[id] = v;
  }
  // Row count matches and ids are unique and in range, so every id is present.
  if (range != active) {
    for (auto& v : col.values) v = active == LabelRange::five ? v * 5.0 : v / 5.0;
  }
  return col;
}

void write_score_column(std::ostream& out, std::span<const double> values, LabelRange range) {
  out << "# range=" << (range == LabelRange::five ? "0..5" : "0..1") << '\n';
  out << "id,score\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << i << ',' << csv::format_double(values[i]) << '\n';
  }
}

FeatureMatrix assemble_matrix(Split split, std::span<const LabeledExample> examples,
                              std::span<const PairFeatures> features,
                              std::span<const ScoreColumn> columns) {
  const std::size_t n = examples.size();
  if (features.size() != n) {
    throw AlignmentError("feature rows (" + std::to_string(features.size()) +
                         ") do not match examples (" + std::to_string(n) + ")");
  }
  FeatureMatrix m;
  m.split = split;
  m.n_rows = n;
  for (const auto& c : columns) {
    if (c.split != split) {
      throw AlignmentError("score column " + c.model_name + " belongs to split " +
                           std::string(to_string(c.split)) + ", matrix is " +
                           std::string(to_string(split)));
    }
    if (c.values.size() != n) {
      throw AlignmentError("score column " + c.model_name + " has " +
                           std::to_string(c.values.size()) + " values, expected " +
                           std::to_string(n));
    }
    if (std::find(m.column_names.begin(), m.column_names.end(), c.model_name) !=
        m.column_names.end()) {
      throw ValidationError("duplicate score column " + c.model_name);
    }
    m.column_names.push_back(c.model_name);
  }
  for (auto name : pair_feature_names()) m.column_names.emplace_back(name);
  const std::size_t d = m.column_names.size();
  m.cells.resize(n * d);
  m.targets.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (examples[i].id != i) throw AlignmentError("examples are not in id order");
    double* row = m.cells.data() + i * d;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const double v = columns[c].values[i];
      if (!std::isfinite(v)) {
        throw ValidationError("non-finite score in column " + columns[c].model_name);
      }
      row[c] = v;
    }
    const auto fv = features[i].values();
    std::copy(fv.begin(), fv.end(), row + columns.size());
    m.targets[i] = examples[i].label;
  }
  return m;
}

FeatureMatrix select_score_columns(const FeatureMatrix& m, std::span<const std::string> models) {
  const std::size_t n_hand = PairFeatures::kSize;
  if (m.n_cols() < n_hand) throw ValidationError("matrix lacks handcrafted columns");
  const std::size_t n_scores = m.n_cols() - n_hand;
  std::vector<std::size_t> keep;
  for (const auto& name : models) {
    auto it = std::find(m.column_names.begin(), m.column_names.begin() + n_scores, name);
    if (it == m.column_names.begin() + n_scores) {
      throw ValidationError("no score column named " + name);
    }
    keep.push_back(static_cast<std::size_t>(it - m.column_names.begin()));
  }
  for (std::size_t c = n_scores; c < m.n_cols(); ++c) keep.push_back(c);

  FeatureMatrix out;
  out.split = m.split;
  out.n_rows = m.n_rows;
  out.targets = m.targets;
  for (auto c : keep) out.column_names.push_back(m.column_names[c]);
  out.cells.reserve(m.n_rows * keep.size());
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    for (auto c : keep) out.cells.push_back(m.at(r, c));
  }
  return out;
}

void write_matrix_csv(std::ostream& out, const FeatureMatrix& m) {
  out << "# split=" << to_string(m.split) << '\n';
  out << "id";
  for (const auto& name : m.column_names) out << ',' << name;
  out << ",target\n";
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    out << r;
    for (double v : m.row(r)) out << ',' << csv::format_double(v);
    out << ',' << csv::format_double(m.targets[r]) << '\n';
  }
}

FeatureMatrix read_matrix_csv(std::istream& in) {
  const auto table = csv::read(in);
  if (table.header.size() < 2 || table.header.front() != "id" || table.header.back() != "target") {
    throw ParseError("matrix CSV header must start with 'id' and end with 'target'");
  }
  FeatureMatrix m;
  for (const auto& c : table.comments) {
    auto pos = c.find("split=");
    if (pos != std::string::npos) m.split = parse_split(c.substr(pos + 6));
  }
  m.column_names.assign(table.header.begin() + 1, table.header.end() - 1);
  m.n_rows = table.rows.size();
  const std::size_t d = m.column_names.size();
  m.cells.reserve(m.n_rows * d);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto line = table.row_lines[r];
    if (parse_id(row[0], line) != r) throw ParseError("matrix ids must be 0..n-1 in order", line);
    for (std::size_t c = 0; c < d; ++c) m.cells.push_back(csv::parse_double(row[c + 1], line));
    m.targets.push_back(csv::parse_double(row.back(), line));
  }
  return m;
}

std::vector<std::vector<std::string>> enumerate_subsets(std::span<const std::string> models,
                                                        const std::set<int>& sizes) {
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (std::size_t j = i + 1; j < models.size(); ++j) {
      if (models[i] == models[j]) throw ValidationError("duplicate model name " + models[i]);
    }
  }
  std::vector<std::vector<std::string>> out;
  const int m = static_cast<int>(models.size());
  for (int k : sizes) {
    if (k < 1 || k > m) {
      throw ValidationError("subset size " + std::to_string(k) + " not in [1," +
                            std::to_string(m) + "]");
    }
  }
  for (int k : sizes) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<std::string> subset;
      for (int i : idx) subset.push_back(models[i]);
      out.push_back(std::move(subset));
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == m - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

std::string join_subset(std::span<const std::string> subset) {
  std::string out;
  for (const auto& s : subset) {
    if (!out.empty()) out += '+';
    out += s;
  }
  return out.empty() ? std::string("none") : out;
}

}  // namespace stsb
