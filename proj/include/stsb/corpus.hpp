#pragma once

// STS-benchmark corpus: parsing the tab-separated distribution files,
// label range conversion, and per-source bookkeeping.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"

namespace stsb {

enum class Split { train, dev, test };

std::string_view to_string(Split s);
Split parse_split(std::string_view name);
inline constexpr Split kAllSplits[] = {Split::train, Split::dev, Split::test};

/// Label scale. `five` is the native [0,5] benchmark scale, `unit` is [0,1].
enum class LabelRange { five, unit };

std::string_view to_string(LabelRange r);
LabelRange parse_label_range(std::string_view name);
inline double range_max(LabelRange r) { return r == LabelRange::five ? 5.0 : 1.0; }

struct LabeledExample {
  std::size_t id = 0;
  std::string genre;
  std::string source_file;
  std::string year;
  double label = 0.0;
  std::string sentence_a;
  std::string sentence_b;

  bool operator==(const LabeledExample&) const = default;
};

struct Corpus {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> dev;
  std::vector<LabeledExample> test;

  const std::vector<LabeledExample>& split(Split s) const;
  std::vector<LabeledExample>& split(Split s);
  bool operator==(const Corpus&) const = default;
};

/// Reads STSB records: genre, file, year, index, score, sentence1, sentence2
/// separated by tabs. Fields past the seventh are dropped; blank lines are
/// skipped. Ids follow line order starting at 0.
///
/// Throws ParseError for lines with fewer than 7 fields and ValidationError
/// for scores that are non-numeric or outside [0,5] or for blank sentences.
std::vector<LabeledExample> parse_stsb_tsv(std::istream& in, Split split);

/// Writes records in the same seven-column layout parse_stsb_tsv reads.
void write_stsb_tsv(std::ostream& out, const std::vector<LabeledExample>& examples);

/// An empty path leaves that split empty.
Corpus load_corpus(const std::string& train_path, const std::string& dev_path,
                   const std::string& test_path);

/// Affine conversion between the [0,5] and [0,1] label scales.
/// `target == unit` divides by 5 and expects labels in [0,5];
/// `target == five` multiplies by 5 and expects labels in [0,1].
std::vector<LabeledExample> scale_labels(const std::vector<LabeledExample>& examples,
                                         LabelRange target);

/// Genre as printed in the dataset breakdown table: the distribution's
/// "main-" prefix is dropped ("main-news" -> "news").
std::string breakdown_genre(std::string_view genre);

struct BreakdownKey {
  std::string genre;
  std::string source_file;
  Split split;
  auto operator<=>(const BreakdownKey&) const = default;
};

/// Example counts per (genre, source file, split). Every (genre, file) pair
/// seen in any split gets a cell for all three splits, zero included.
std::map<BreakdownKey, std::size_t> source_breakdown(const Corpus& corpus);

nlohmann::json to_json(const Corpus& corpus);
Corpus corpus_from_json(const nlohmann::json& doc);

}  // namespace stsb
