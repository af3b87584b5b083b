#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "stsb/corpus.hpp"
#include "stsb/text.hpp"

using namespace stsb;

namespace {

std::vector<std::string> toks(std::string_view s) { return tokenize(s).tokens; }

}  // namespace

TEST(Tokenize, Examples) {
  EXPECT_EQ(toks("A man is playing a guitar."),
            (std::vector<std::string>{"a", "man", "is", "playing", "a", "guitar"}));
  EXPECT_TRUE(toks("").empty());
  EXPECT_EQ(toks("don't"), (std::vector<std::string>{"don", "t"}));
  EXPECT_EQ(toks("Café  ÜBER—naïve 42x"),
            (std::vector<std::string>{"café", "über", "naïve", "42x"}));
  EXPECT_EQ(toks("ΑΘΗΝΑ Москва"), (std::vector<std::string>{"αθηνα", "москва"}));
}

TEST(Tokenize, InvalidUtf8Separates) {
  EXPECT_EQ(toks("ab\xff" "cd"), (std::vector<std::string>{"ab", "cd"}));
}

TEST(Lemmatize, Examples) {
  EXPECT_EQ(lemmatize("playing"), "play");
  EXPECT_EQ(lemmatize("was"), "be");
  EXPECT_EQ(lemmatize("guitar"), "guitar");
  EXPECT_EQ(lemmatize("running"), "run");
  EXPECT_EQ(lemmatize("making"), "make");
  EXPECT_EQ(lemmatize("cities"), "city");
  EXPECT_EQ(lemmatize("boxes"), "box");
  EXPECT_EQ(lemmatize("dogs"), "dog");
  EXPECT_EQ(lemmatize("walked"), "walk");
  EXPECT_EQ(lemmatize("children"), "child");
  EXPECT_EQ(lemmatize("glass"), "glass");
  EXPECT_EQ(lemmatize("bus"), "bus");
}

TEST(Lemmatize, IdempotentOnFixtureVocabulary) {
  std::set<std::string> vocab;
  for (const char* f : {"sts-train.csv", "sts-dev.csv", "sts-test.csv"}) {
    std::ifstream in(testing_util::fixture(f));
    for (const auto& ex : parse_stsb_tsv(in, Split::train)) {
      for (const auto& t : tokenize(ex.sentence_a).tokens) vocab.insert(t);
      for (const auto& t : tokenize(ex.sentence_b).tokens) vocab.insert(t);
    }
  }
  const char* extra[] = {"studies", "stopped", "hopping", "hoping", "agreed", "caring",
                         "flies",   "series",  "news",    "wins",   "won",    "sings"};
  for (const char* e : extra) vocab.insert(e);
  for (const auto& t : vocab) {
    const auto l = lemmatize(t);
    EXPECT_EQ(lemmatize(l), l) << t;
    EXPECT_EQ(is_stopword(l), is_stopword(t)) << t;
  }
}

TEST(PosClass, Examples) {
  EXPECT_EQ(pos_class("playing"), PosClass::verb);
  EXPECT_EQ(pos_class("beautiful"), PosClass::adjective);
  EXPECT_EQ(pos_class("guitar"), PosClass::other);
  EXPECT_EQ(pos_class("king"), PosClass::other);
}

TEST(Stopwords, ListSize) {
  EXPECT_EQ(stopword_list().size(), 179u);
  EXPECT_TRUE(is_stopword("the"));
  EXPECT_TRUE(is_stopword("don't"));
  EXPECT_FALSE(is_stopword("guitar"));
}

TEST(PairFeatures, Examples) {
  const auto a = analyze_sentence("A man is playing a guitar.");
  EXPECT_EQ(count_code_points(a.raw), 26u);
  const auto f = pair_feature_vector(a, a);
  EXPECT_EQ(f.char_count_a, 26u);
  EXPECT_EQ(f.char_count_a, f.char_count_b);
  EXPECT_EQ(f.token_count_a, 6u);
  EXPECT_EQ(f.stopword_count_a, 3u);
  EXPECT_EQ(f.verb_count_a, 2u);  // copula counts
  EXPECT_EQ(f.overlap_tokens, 5u);  // distinct: a, man, is, playing, guitar
  const auto b = analyze_sentence("Dogs bark loudly.");
  const auto g = pair_feature_vector(a, b);
  EXPECT_EQ(g.overlap_tokens, 0u);
  EXPECT_EQ(g.overlap_lemmas, 0u);
  EXPECT_EQ(pair_feature_names().size(), PairFeatures::kSize);
  EXPECT_EQ(count_code_points("naïve"), 5u);
}

TEST(PairFeatures, Invariants) {
  std::ifstream in(testing_util::fixture("sts-train.csv"));
  for (const auto& ex : parse_stsb_tsv(in, Split::train)) {
    const auto a = analyze_sentence(ex.sentence_a);
    const auto b = analyze_sentence(ex.sentence_b);
    ASSERT_EQ(a.tokens.size(), a.lemmas.size());
    ASSERT_EQ(a.tokens.size(), a.pos.size());
    const auto f = pair_feature_vector(a, b);
    const std::set<std::string> ta(a.tokens.begin(), a.tokens.end()),
        tb(b.tokens.begin(), b.tokens.end()), la(a.lemmas.begin(), a.lemmas.end()),
        lb(b.lemmas.begin(), b.lemmas.end());
    EXPECT_LE(f.overlap_tokens, std::min(ta.size(), tb.size()));
    EXPECT_LE(f.overlap_lemmas, std::min(la.size(), lb.size()));
    EXPECT_GE(f.token_count_a, f.stopword_count_a);
    const double mf = meaningful_lemma_fraction(a);
    EXPECT_NEAR(f.stopword_count_a + mf * f.token_count_a, f.token_count_a, 1e-9);
    EXPECT_EQ(lemma_jaccard(a, b, false), lemma_jaccard(b, a, false));
    EXPECT_GE(lemma_jaccard(a, b, true), 0.0);
    EXPECT_LE(lemma_jaccard(a, b, true), 1.0);
    EXPECT_EQ(f, pair_feature_vector(analyze_sentence(ex.sentence_a),
                                     analyze_sentence(ex.sentence_b)));
  }
}

TEST(LemmaJaccard, Examples) {
  const auto a = analyze_sentence("run dog");
  const auto b = analyze_sentence("run cat");
  EXPECT_DOUBLE_EQ(lemma_jaccard(a, b, false), 1.0 / 3.0);
  EXPECT_EQ(lemma_jaccard(a, a, false), 1.0);
  EXPECT_EQ(lemma_jaccard(a, analyze_sentence("tree"), false), 0.0);
  EXPECT_EQ(lemma_jaccard(analyze_sentence(""), analyze_sentence("..."), false), 0.0);
  EXPECT_EQ(lemma_jaccard(analyze_sentence("the a"), analyze_sentence("the"), true), 0.0);
}

TEST(MeaningfulLemmas, Examples) {
  EXPECT_DOUBLE_EQ(meaningful_lemma_fraction(analyze_sentence("a man is playing a guitar")), 0.5);
  EXPECT_EQ(meaningful_lemma_fraction(analyze_sentence("it is what it is")), 0.0);
  EXPECT_EQ(meaningful_lemma_fraction(analyze_sentence("dogs chase cats")), 1.0);
  EXPECT_EQ(meaningful_lemma_fraction(analyze_sentence("")), 0.0);
}

TEST(FeatureCsv, RoundTrip) {
  std::vector<PairFeatures> rows;
  rows.push_back(pair_feature_vector(analyze_sentence("A man is playing a guitar."),
                                     analyze_sentence("A man plays the guitar.")));
  rows.push_back(PairFeatures{});
  std::ostringstream out;
  write_feature_csv(out, rows);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "id,char_a,char_b,stop_a,stop_b,tok_a,tok_b,verb_a,verb_b,adj_a,adj_b,ovl_tok,ovl_lem");
  std::istringstream in(out.str());
  EXPECT_EQ(read_feature_csv(in), rows);
}
