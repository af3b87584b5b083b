#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "stsb/analysis.hpp"
#include "stsb/errors.hpp"

using namespace stsb;

TEST(Partition, Examples) {
  const std::vector<double> labels{0, 2.5, 5, 5, 0};
  auto p = partition_by_error(labels, labels);
  EXPECT_EQ(p.correct.size(), 5u);
  EXPECT_TRUE(p.incorrect.empty());
  const std::vector<double> preds{1.0, 2.5, 4.2, 3.0, 0.999};
  p = partition_by_error(preds, labels);
  EXPECT_EQ(p.incorrect, (std::vector<std::size_t>{0, 3}));  // |err| = 1 exactly is incorrect
  p = partition_by_error(preds, labels, 1.0, true);
  EXPECT_EQ(p.analyzed, 4u);
  EXPECT_EQ(p.correct.size() + p.incorrect.size(), 4u);
  EXPECT_EQ(std::count(p.correct.begin(), p.correct.end(), 1u), 0);
  EXPECT_THROW(partition_by_error(std::vector<double>{1}, labels), ValidationError);
}

TEST(Partition, Conservation) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    auto labels = testing_util::random_vector(rng, 200, 5.0);
    for (auto& v : labels) v = std::round(v);
    const auto preds = testing_util::random_vector(rng, 200, 5.0);
    for (bool edge : {false, true}) {
      const auto p = partition_by_error(preds, labels, 1.0, edge);
      EXPECT_EQ(p.correct.size() + p.incorrect.size(), p.analyzed);
    }
  }
}

TEST(Kde, SingleSampleMode) {
  const std::vector<double> s{0.5};
  const auto c = kde_density(s);
  const auto peak = std::max_element(c.density.begin(), c.density.end()) - c.density.begin();
  std::size_t nearest = 0;
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    if (std::abs(c.grid[i] - 0.5) < std::abs(c.grid[nearest] - 0.5)) nearest = i;
  }
  EXPECT_EQ(static_cast<std::size_t>(peak), nearest);
  EXPECT_EQ(c.grid.size(), 512u);
}

TEST(Kde, IntegratesToOne) {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    auto s = testing_util::random_vector(rng, 1 + rng.below(100));
    if (t % 5 == 0) std::fill(s.begin(), s.end(), 0.3);  // zero spread
    const auto c = kde_density(s);
    EXPECT_NEAR(curve_integral(c), 1.0, 0.01);
    for (double d : c.density) EXPECT_GE(d, 0.0);
    EXPECT_GE(c.bandwidth, 1e-6);
    EXPECT_EQ(kde_density(s).density, c.density);
  }
}

TEST(Kde, SilvermanAndErrors) {
  const std::vector<double> s{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  // sd = 3.0277, IQR/1.34 = 4.5/1.34 = 3.358
  EXPECT_NEAR(silverman_bandwidth(s), 0.9 * 3.0276503540974917 * std::pow(10.0, -0.2), 1e-12);
  EXPECT_THROW(kde_density(std::vector<double>{}), ValidationError);
  EXPECT_THROW(kde_density(s, std::nullopt, 0.0), ValidationError);
  const auto c = kde_density(s, std::vector<double>{5.5}, 1.0);
  EXPECT_EQ(c.density.size(), 1u);
}

TEST(SpanTable, Examples) {
  const std::vector<double> one_l{0.3}, one_p{0.8};
  auto rows = label_span_mae(one_p, one_l);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].span, "[0,0.5]");
  EXPECT_DOUBLE_EQ(*rows[0].mae, 0.5);
  EXPECT_FALSE(rows[1].mae.has_value());
  EXPECT_EQ(span_index(0.0), 0u);
  EXPECT_EQ(span_index(0.5), 0u);
  EXPECT_EQ(span_index(0.51), 1u);
  EXPECT_EQ(span_index(1.5), 1u);
  EXPECT_EQ(span_index(4.6), 5u);
  EXPECT_EQ(span_index(5.0), 5u);
  EXPECT_EQ(span_index(0.3, 1.0), 1u);
  EXPECT_EQ(span_index(0.1, 1.0), 0u);
}

TEST(SpanTable, PartitionsLabels) {
  Rng rng(3);
  auto labels = testing_util::random_vector(rng, 500, 5.0);
  labels[0] = 0;
  labels[1] = 5;
  const auto rows = label_span_mae(labels, labels);
  std::size_t total = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    total += rows[k].count;
    if (rows[k].mae) EXPECT_EQ(*rows[k].mae, 0.0);
    if (k) EXPECT_EQ(rows[k].lo, rows[k - 1].hi);
  }
  EXPECT_EQ(rows.front().lo, 0.0);
  EXPECT_EQ(rows.back().hi, 5.0);
  EXPECT_EQ(total, labels.size());
}

TEST(EdgeReport, FeaturesAndWarnings) {
  std::vector<LabeledExample> ex(4);
  const char* a[] = {"A man is playing a guitar.", "A dog runs.", "The sky is blue.", "Cats sleep."};
  const char* b[] = {"A man plays a guitar.", "A cat sleeps.", "Markets fell today.", "Cats sleep."};
  const double labels[] = {5, 2.5, 0, 5};
  std::vector<TokenizedSentence> sa, sb;
  for (std::size_t i = 0; i < 4; ++i) {
    ex[i].id = i;
    ex[i].label = labels[i];
    ex[i].sentence_a = a[i];
    ex[i].sentence_b = b[i];
    sa.push_back(analyze_sentence(a[i]));
    sb.push_back(analyze_sentence(b[i]));
  }
  const std::vector<double> perfect{5, 2.5, 0, 5};
  auto rep = edge_error_report(ex, perfect, sa, sb);
  EXPECT_EQ(rep.rows.size(), 3u);
  EXPECT_EQ(rep.scatter.size(), 4u);
  ASSERT_EQ(rep.curves.size(), 4u);
  const std::vector<std::string> names{"lemma_jaccard", "lemma_jaccard_no_stopwords",
                                       "meaningful_lemmas_a", "meaningful_lemmas_b"};
  for (std::size_t f = 0; f < 4; ++f) {
    EXPECT_EQ(rep.curves[f].feature, names[f]);
    EXPECT_TRUE(rep.curves[f].correct.has_value());
    EXPECT_FALSE(rep.curves[f].incorrect.has_value());
  }
  EXPECT_EQ(rep.warnings.size(), 1u);

  const std::vector<double> mixed{5, 2.5, 3, 5};
  rep = edge_error_report(ex, mixed, sa, sb);
  EXPECT_TRUE(rep.warnings.empty());
  for (const auto& c : rep.curves) {
    ASSERT_TRUE(c.correct && c.incorrect);
    EXPECT_EQ(c.correct->grid, c.incorrect->grid);
    EXPECT_NEAR(curve_integral(*c.correct), 1.0, 0.01);
    EXPECT_NEAR(curve_integral(*c.incorrect), 1.0, 0.01);
  }
  EXPECT_DOUBLE_EQ(rep.rows[0].lemma_jaccard, 4.0 / 5.0);  // a man be play guitar
  std::ostringstream out;
  write_density_csv(out, rep.curves);
  EXPECT_EQ(out.str().substr(0, 25), "feature,side,grid,density");
}
