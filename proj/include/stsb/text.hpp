#pragma once

// Rule-and-lexicon text processing used for the structural pair features:
// tokenizer, lemmatizer, coarse POS classes, stopwords.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stsb {

enum class PosClass { verb, adjective, other };

struct TokenizedSentence {
  std::string raw;
  std::vector<std::string> tokens;
  std::vector<std::string> lemmas;
  std::vector<PosClass> pos;
};

/// Lowercases and splits into maximal runs of alphanumeric code points.
/// Only `raw` and `tokens` are filled in.
TokenizedSentence tokenize(std::string_view raw);

/// tokenize() followed by lemmatize() and pos_class() on every token.
TokenizedSentence analyze_sentence(std::string_view raw);

/// Irregular-form lexicon first, then ordered suffix rules. Idempotent.
/// A token is a stopword exactly when its lemma is.
std::string lemmatize(std::string_view token);

PosClass pos_class(std::string_view token);

bool is_stopword(std::string_view token);
/// The embedded 179-word English stopword list, in list order.
std::span<const std::string_view> stopword_list();

/// Number of Unicode scalar values in a UTF-8 string.
std::size_t count_code_points(std::string_view utf8);

struct PairFeatures {
  std::size_t char_count_a = 0, char_count_b = 0;
  std::size_t stopword_count_a = 0, stopword_count_b = 0;
  std::size_t token_count_a = 0, token_count_b = 0;
  std::size_t verb_count_a = 0, verb_count_b = 0;
  std::size_t adjective_count_a = 0, adjective_count_b = 0;
  std::size_t overlap_tokens = 0;
  std::size_t overlap_lemmas = 0;

  static constexpr std::size_t kSize = 12;
  std::array<double, kSize> values() const;
  bool operator==(const PairFeatures&) const = default;
};

/// Column names in the order of PairFeatures::values().
std::span<const std::string_view> pair_feature_names();

PairFeatures pair_feature_vector(const TokenizedSentence& a, const TokenizedSentence& b);

/// |A∩B| / |A∪B| over distinct lemmas. Both sets empty gives 0.
double lemma_jaccard(const TokenizedSentence& a, const TokenizedSentence& b,
                     bool drop_stopwords);

/// Share of token positions whose lemma is not a stopword; 0 for no tokens.
double meaningful_lemma_fraction(const TokenizedSentence& s);

/// Feature CSV: `id,char_a,...,ovl_lem`, one row per example in id order.
void write_feature_csv(std::ostream& out, std::span<const PairFeatures> rows);
std::vector<PairFeatures> read_feature_csv(std::istream& in);

}  // namespace stsb
