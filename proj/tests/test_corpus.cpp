#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "stsb/corpus.hpp"
#include "stsb/errors.hpp"

using namespace stsb;

namespace {

constexpr const char* kFirstTrainLine =
    "main-captions\tMSRvid\t2012\t0001\t5.000\tA plane is taking off.\tAn air plane is taking off.";

std::vector<LabeledExample> parse(const std::string& text, Split s = Split::train) {
  std::istringstream in(text);
  return parse_stsb_tsv(in, s);
}

}  // namespace

TEST(ParseTsv, FirstOfficialRecord) {
  const auto ex = parse(std::string(kFirstTrainLine) + "\n");
  ASSERT_EQ(ex.size(), 1u);
  EXPECT_EQ(ex[0].id, 0u);
  EXPECT_EQ(ex[0].genre, "main-captions");
  EXPECT_EQ(ex[0].source_file, "MSRvid");
  EXPECT_EQ(ex[0].year, "2012");
  EXPECT_EQ(ex[0].label, 5.0);
  EXPECT_EQ(ex[0].sentence_a, "A plane is taking off.");
  EXPECT_EQ(ex[0].sentence_b, "An air plane is taking off.");
}

TEST(ParseTsv, EmptyStreamAndExtraFields) {
  EXPECT_TRUE(parse("").empty());
  const auto ex = parse("g\tf\t2015\t1\t2.5\ta b\tc d\tlicense\textra\r\n\ng\tf\t2015\t2\t0\tx\ty\n");
  ASSERT_EQ(ex.size(), 2u);
  EXPECT_EQ(ex[0].sentence_b, "c d");
  EXPECT_EQ(ex[1].id, 1u);
  EXPECT_EQ(ex[1].label, 0.0);
}

TEST(ParseTsv, Errors) {
  try {
    parse(std::string(kFirstTrainLine) + "\ng\tf\t2012\t2\t3.0\tonly six\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse("g\tf\t2012\t1\t5.5\ta\tb\n"), ValidationError);
  EXPECT_THROW(parse("g\tf\t2012\t1\t-0.1\ta\tb\n"), ValidationError);
  EXPECT_THROW(parse("g\tf\t2012\t1\tfive\ta\tb\n"), ValidationError);
  EXPECT_THROW(parse("g\tf\t2012\t1\tnan\ta\tb\n"), ValidationError);
  EXPECT_THROW(parse("g\tf\t2012\t1\t1.0\t   \tb\n"), ValidationError);
}

TEST(ParseTsv, RoundTrip) {
  std::ifstream in(testing_util::fixture("sts-dev.csv"));
  const auto a = parse_stsb_tsv(in, Split::dev);
  std::ostringstream out;
  write_stsb_tsv(out, a);
  const auto b = parse(out.str(), Split::dev);
  EXPECT_EQ(a, b);
  std::ostringstream again;
  write_stsb_tsv(again, b);
  EXPECT_EQ(out.str(), again.str());
}

TEST(ScaleLabels, EndpointsAndRoundTrip) {
  const auto ex = parse("g\tf\t1\t1\t5\ta\tb\ng\tf\t1\t2\t0\ta\tb\ng\tf\t1\t3\t2.5\ta\tb\n"
                        "g\tf\t1\t4\t3.8\ta\tb\n");
  const auto unit = scale_labels(ex, LabelRange::unit);
  EXPECT_EQ(unit[0].label, 1.0);
  EXPECT_EQ(unit[1].label, 0.0);
  EXPECT_EQ(unit[2].label, 0.5);
  const auto back = scale_labels(unit, LabelRange::five);
  for (std::size_t i = 0; i < ex.size(); ++i) EXPECT_NEAR(back[i].label, ex[i].label, 1e-15);
  EXPECT_THROW(scale_labels(ex, LabelRange::five), ValidationError);
}

TEST(Breakdown, CountsPartitionSplits) {
  const auto c = load_corpus(testing_util::fixture("sts-train.csv"),
                             testing_util::fixture("sts-dev.csv"),
                             testing_util::fixture("sts-test.csv"));
  const auto table = source_breakdown(c);
  std::size_t sums[3] = {0, 0, 0};
  for (const auto& [key, n] : table) {
    sums[static_cast<int>(key.split)] += n;
    EXPECT_EQ(key.genre.rfind("main-", 0), std::string::npos);
  }
  EXPECT_EQ(sums[0], c.train.size());
  EXPECT_EQ(sums[1], c.dev.size());
  EXPECT_EQ(sums[2], c.test.size());
  EXPECT_EQ(table.size() % 3, 0u);
}

TEST(Breakdown, ZeroCellsAndEmptyCorpus) {
  Corpus c;
  EXPECT_TRUE(source_breakdown(c).empty());
  c.train = parse("main-captions\ttrack5.en-en\t2017\t1\t1\ta\tb\n", Split::train);
  c.dev = parse("main-news\tMSRpar\t2012\t1\t1\ta\tb\n", Split::dev);
  const auto t = source_breakdown(c);
  EXPECT_EQ(t.at({"captions", "track5.en-en", Split::train}), 1u);
  EXPECT_EQ(t.at({"news", "MSRpar", Split::train}), 0u);
  EXPECT_EQ(t.at({"news", "MSRpar", Split::test}), 0u);
  EXPECT_EQ(breakdown_genre("main-forums"), "forums");
  EXPECT_EQ(breakdown_genre("news"), "news");
}

TEST(CorpusJson, RoundTrip) {
  Corpus c;
  c.train = parse(std::string(kFirstTrainLine) + "\n", Split::train);
  c.test = parse("main-news\tMSRpar\t2012\t1\t1.2\tx y\tz\n", Split::test);
  EXPECT_EQ(corpus_from_json(to_json(c)).train, c.train);
  EXPECT_EQ(corpus_from_json(to_json(c)).test, c.test);
}
