#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "stsb/errors.hpp"
#include "stsb/text.hpp"

namespace stsb {
namespace {

constexpr std::string_view kFeatureNames[] = {"char_a", "char_b", "stop_a",  "stop_b",
                                              "tok_a",  "tok_b",  "verb_a",  "verb_b",
                                              "adj_a",  "adj_b",  "ovl_tok", "ovl_lem"};

std::size_t count_stopwords(const TokenizedSentence& s) {
  return static_cast<std::size_t>(
      std::count_if(s.tokens.begin(), s.tokens.end(), [](const auto& t) { return is_stopword(t); }));
}

std::size_t count_pos(const TokenizedSentence& s, PosClass cls) {
  return static_cast<std::size_t>(std::count(s.pos.begin(), s.pos.end(), cls));
}

std::size_t intersection_size(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

std::set<std::string> lemma_set(const TokenizedSentence& s, bool drop_stopwords) {
  std::set<std::string> out;
  for (const auto& l : s.lemmas) {
    if (drop_stopwords && is_stopword(l)) continue;
    out.insert(l);
  }
  return out;
}

}  // namespace

std::span<const std::string_view> pair_feature_names() { return kFeatureNames; }

std::array<double, PairFeatures::kSize> PairFeatures::values() const {
  return {static_cast<double>(char_count_a),     static_cast<double>(char_count_b),
          static_cast<double>(stopword_count_a), static_cast<double>(stopword_count_b),
          static_cast<double>(token_count_a),    static_cast<double>(token_count_b),
          static_cast<double>(verb_count_a),     static_cast<double>(verb_count_b),
          static_cast<double>(adjective_count_a), static_cast<double>(adjective_count_b),
          static_cast<double>(overlap_tokens),   static_cast<double>(overlap_lemmas)};
}

PairFeatures pair_feature_vector(const TokenizedSentence& a, const TokenizedSentence& b) {
  PairFeatures f;
  f.char_count_a = count_code_points(a.raw);
  f.char_count_b = count_code_points(b.raw);
  f.stopword_count_a = count_stopwords(a);
  f.stopword_count_b = count_stopwords(b);
  f.token_count_a = a.tokens.size();
  f.token_count_b = b.tokens.size();
  f.verb_count_a = count_pos(a, PosClass::verb);
  f.verb_count_b = count_pos(b, PosClass::verb);
  f.adjective_count_a = count_pos(a, PosClass::adjective);
  f.adjective_count_b = count_pos(b, PosClass::adjective);
  const std::set<std::string> tok_a(a.tokens.begin(), a.tokens.end());
  const std::set<std::string> tok_b(b.tokens.begin(), b.tokens.end());
  f.overlap_tokens = intersection_size(tok_a, tok_b);
  f.overlap_lemmas = intersection_size(lemma_set(a, false), lemma_set(b, false));
  return f;
}

double lemma_jaccard(const TokenizedSentence& a, const TokenizedSentence& b,
                     bool drop_stopwords) {
  const auto la = lemma_set(a, drop_stopwords);
  const auto lb = lemma_set(b, drop_stopwords);
  const std::size_t inter = intersection_size(la, lb);
  const std::size_t uni = la.size() + lb.size() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double meaningful_lemma_fraction(const TokenizedSentence& s) {
  if (s.lemmas.empty()) return 0.0;
  const auto meaningful = std::count_if(s.lemmas.begin(), s.lemmas.end(),
                                        [](const auto& l) { return !is_stopword(l); });
  return static_cast<double>(meaningful) / static_cast<double>(s.lemmas.size());
}

void write_feature_csv(std::ostream& out, std::span<const PairFeatures> rows) {
  out << "id";
  for (auto name : kFeatureNames) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << i;
    for (double v : rows[i].values()) out << ',' << static_cast<std::size_t>(v);
    out << '\n';
  }
}

std::vector<PairFeatures> read_feature_csv(std::istream& in) {
  std::vector<PairFeatures> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::array<std::size_t, PairFeatures::kSize + 1> cells{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t k = 0; k < cells.size(); ++k) {
      auto [ptr, ec] = std::from_chars(p, end, cells[k]);
      if (ec != std::errc()) throw ParseError("bad feature cell", line_no);
      p = ptr;
      if (k + 1 < cells.size()) {
        if (p == end || *p != ',') throw ParseError("expected 13 feature columns", line_no);
        ++p;
      }
    }
    if (p != end) throw ParseError("trailing data in feature row", line_no);
    if (cells[0] != rows.size()) throw ParseError("feature ids must be 0..n-1 in order", line_no);
    PairFeatures f;
    std::size_t* fields[] = {&f.char_count_a,      &f.char_count_b,     &f.stopword_count_a,
                             &f.stopword_count_b,  &f.token_count_a,    &f.token_count_b,
                             &f.verb_count_a,      &f.verb_count_b,     &f.adjective_count_a,
                             &f.adjective_count_b, &f.overlap_tokens,   &f.overlap_lemmas};
    for (std::size_t k = 0; k < PairFeatures::kSize; ++k) *fields[k] = cells[k + 1];
    rows.push_back(f);
  }
  return rows;
}

}  // namespace stsb
