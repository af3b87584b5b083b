#include "stsb/corpus.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <cstdio>
#include <set>
#include <utility>

#include "stsb/errors.hpp"

namespace stsb {

std::string_view to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "?";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::train;
  if (name == "dev") return Split::dev;
  if (name == "test") return Split::test;
  throw ValidationError("unknown split '" + std::string(name) + "'");
}

std::string_view to_string(LabelRange r) { return r == LabelRange::five ? "five" : "unit"; }

LabelRange parse_label_range(std::string_view name) {
  if (name == "five" || name == "0..5") return LabelRange::five;
  if (name == "unit" || name == "0..1") return LabelRange::unit;
  throw ValidationError("unknown label range '" + std::string(name) + "'");
}

const std::vector<LabeledExample>& Corpus::split(Split s) const {
  switch (s) {
    case Split::train: return train;
    case Split::dev: return dev;
    case Split::test: return test;
  }
  return train;
}

std::vector<LabeledExample>& Corpus::split(Split s) {
  return const_cast<std::vector<LabeledExample>&>(std::as_const(*this).split(s));
}

namespace {

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n\v\f") == std::string_view::npos;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_score(std::string_view text, std::size_t line_no) {
  auto first = text.find_first_not_of(' ');
  auto last = text.find_last_not_of(' ');
  if (first == std::string_view::npos) {
    throw ValidationError("line " + std::to_string(line_no) + ": empty score");
  }
  text = text.substr(first, last - first + 1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ValidationError("line " + std::to_string(line_no) + ": non-numeric score '" +
                          std::string(text) + "'");
  }
  if (value < 0.0 || value > 5.0) {
    throw ValidationError("line " + std::to_string(line_no) + ": score " + std::string(text) +
                          " outside [0,5]");
  }
  return value;
}

}  // namespace

std::vector<LabeledExample> parse_stsb_tsv(std::istream& in, Split split) {
  std::vector<LabeledExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() < 7) {
      throw ParseError("expected at least 7 tab-separated fields, found " +
                           std::to_string(fields.size()) + " (" + std::string(to_string(split)) +
                           ")",
                       line_no);
    }
    LabeledExample ex;
    ex.id = out.size();
    ex.genre = fields[0];
    ex.source_file = fields[1];
    ex.year = fields[2];
    ex.label = parse_score(fields[4], line_no);
    ex.sentence_a = fields[5];
    ex.sentence_b = fields[6];
    if (is_blank(ex.sentence_a) || is_blank(ex.sentence_b)) {
      throw ValidationError("line " + std::to_string(line_no) + ": empty sentence");
    }
    out.push_back(std::move(ex));
  }
  return out;
}

void write_stsb_tsv(std::ostream& out, const std::vector<LabeledExample>& examples) {
  char buf[32];
  for (const auto& ex : examples) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), ex.label);
    (void)ec;
    char idx[16];
    std::snprintf(idx, sizeof(idx), "%04zu", ex.id);
    out << ex.genre << '\t' << ex.source_file << '\t' << ex.year << '\t' << idx << '\t'
        << std::string_view(buf, ptr - buf) << '\t' << ex.sentence_a << '\t' << ex.sentence_b
        << '\n';
  }
}

Corpus load_corpus(const std::string& train_path, const std::string& dev_path,
                   const std::string& test_path) {
  Corpus corpus;
  const std::pair<Split, const std::string*> files[] = {
      {Split::train, &train_path}, {Split::dev, &dev_path}, {Split::test, &test_path}};
  for (const auto& [split, path] : files) {
    if (path->empty()) continue;
    std::ifstream in(*path, std::ios::binary);
    if (!in) throw ValidationError("cannot open corpus file " + *path);
    try {
      corpus.split(split) = parse_stsb_tsv(in, split);
    } catch (const ParseError& e) {
      throw ParseError(*path + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(*path + ": " + e.what());
    }
  }
  return corpus;
}

std::vector<LabeledExample> scale_labels(const std::vector<LabeledExample>& examples,
                                         LabelRange target) {
  const double src_max = target == LabelRange::unit ? 5.0 : 1.0;
  std::vector<LabeledExample> out = examples;
  for (auto& ex : out) {
    if (!std::isfinite(ex.label) || ex.label < 0.0 || ex.label > src_max) {
      throw ValidationError("label " + std::to_string(ex.label) + " of example " +
                            std::to_string(ex.id) + " outside source range [0," +
                            std::to_string(static_cast<int>(src_max)) + "]");
    }
    ex.label = target == LabelRange::unit ? ex.label / 5.0 : ex.label * 5.0;
  }
  return out;
}

std::string breakdown_genre(std::string_view genre) {
  constexpr std::string_view prefix = "main-";
  if (genre.substr(0, prefix.size()) == prefix) genre.remove_prefix(prefix.size());
  return std::string(genre);
}

std::map<BreakdownKey, std::size_t> source_breakdown(const Corpus& corpus) {
  std::map<BreakdownKey, std::size_t> table;
  std::set<std::pair<std::string, std::string>> sources;
  for (Split s : kAllSplits) {
    for (const auto& ex : corpus.split(s)) {
      auto genre = breakdown_genre(ex.genre);
      sources.emplace(genre, ex.source_file);
      ++table[BreakdownKey{genre, ex.source_file, s}];
    }
  }
  for (const auto& [genre, file] : sources) {
    for (Split s : kAllSplits) table.try_emplace(BreakdownKey{genre, file, s}, 0);
  }
  return table;
}

nlohmann::json to_json(const Corpus& corpus) {
  nlohmann::json doc = nlohmann::json::object();
  for (Split s : kAllSplits) {
    auto arr = nlohmann::json::array();
    for (const auto& ex : corpus.split(s)) {
      arr.push_back({{"id", ex.id},
                     {"genre", ex.genre},
                     {"source_file", ex.source_file},
                     {"year", ex.year},
                     {"label", ex.label},
                     {"sentence_a", ex.sentence_a},
                     {"sentence_b", ex.sentence_b}});
    }
    doc[std::string(to_string(s))] = std::move(arr);
  }
  return doc;
}

Corpus corpus_from_json(const nlohmann::json& doc) {
  Corpus corpus;
  for (Split s : kAllSplits) {
    auto key = std::string(to_string(s));
    if (!doc.contains(key)) continue;
    auto& dst = corpus.split(s);
    for (const auto& item : doc.at(key)) {
      LabeledExample ex;
      ex.id = item.at("id").get<std::size_t>();
      ex.genre = item.at("genre").get<std::string>();
      ex.source_file = item.at("source_file").get<std::string>();
      ex.year = item.at("year").get<std::string>();
      ex.label = item.at("label").get<double>();
      ex.sentence_a = item.at("sentence_a").get<std::string>();
      ex.sentence_b = item.at("sentence_b").get<std::string>();
      if (ex.id != dst.size()) {
        throw ValidationError("corpus snapshot ids in split " + key + " are not contiguous");
      }
      dst.push_back(std::move(ex));
    }
  }
  return corpus;
}

}  // namespace stsb
