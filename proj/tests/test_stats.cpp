#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "oracles.hpp"
#include "stsb/errors.hpp"
#include "stsb/stats.hpp"

using namespace stsb;
using namespace oracle;

TEST(Pearson, PerfectLinear) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y, z;
  for (double v : x) {
    y.push_back(2 * v + 3);
    z.push_back(-v);
  }
  EXPECT_NEAR(pearson(x, y), 1.0, 1e-15);
  EXPECT_NEAR(pearson(x, z), -1.0, 1e-15);
}

TEST(Pearson, SmallExample) {
  const std::vector<double> x{1, 2, 3}, y{1, 2, 4};
  EXPECT_NEAR(pearson(x, y), static_cast<double>(big_pearson(x, y)), 1e-15);
  EXPECT_NEAR(pearson(x, y), 0.98198050606196574, 1e-15);
}

TEST(Pearson, ConstantSideIsUndefined) {
  const std::vector<double> x{1, 1, 1}, y{1, 2, 3};
  EXPECT_THROW(pearson(x, y), UndefinedCorrelationError);
  EXPECT_THROW(pearson(y, x), UndefinedCorrelationError);
}

TEST(Pearson, LengthMismatch) {
  const std::vector<double> x{1, 2, 3}, y{1, 2};
  EXPECT_THROW(pearson(x, y), ValidationError);
}

TEST(Pearson, MatchesExtendedPrecisionOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(300);
    auto x = testing_util::random_vector(rng, n, 5.0);
    auto y = testing_util::random_vector(rng, n, 5.0);
    for (std::size_t i = 0; i < n; ++i) y[i] += 0.5 * x[i];
    EXPECT_NEAR(pearson(x, y), static_cast<double>(big_pearson(x, y)), 1e-12);
  }
}

TEST(Pearson, AffineInvariance) {
  Rng rng(5);
  const auto x = testing_util::random_vector(rng, 100, 5.0);
  const auto y = testing_util::random_vector(rng, 100, 5.0);
  std::vector<double> xs(x.size());
  std::transform(x.begin(), x.end(), xs.begin(), [](double v) { return 0.2 * v + 7.0; });
  EXPECT_NEAR(pearson(x, y), pearson(xs, y), 1e-12);
  EXPECT_NEAR(spearman(x, y), spearman(xs, y), 1e-12);
}

TEST(Ranks, AverageTies) {
  const std::vector<double> v{10, 20, 20, 5};
  EXPECT_EQ(average_ranks(v), (std::vector<double>{2, 3.5, 3.5, 1}));
  EXPECT_TRUE(has_ties(v));
  const auto r = average_ranks(std::vector<double>{3, 3, 3, 3, 3});
  EXPECT_DOUBLE_EQ(std::accumulate(r.begin(), r.end(), 0.0), 15.0);
}

TEST(Spearman, Examples) {
  EXPECT_DOUBLE_EQ(spearman(std::vector<double>{1, 2, 3}, std::vector<double>{10, 20, 15}), 0.5);
  EXPECT_DOUBLE_EQ(spearman(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 8, 27, 64}),
                   1.0);
}

TEST(Spearman, AllTiedIsUndefined) {
  EXPECT_THROW(spearman(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
               UndefinedCorrelationError);
}

TEST(Spearman, BranchesAgreeTieFree) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(200);
    const auto x = testing_util::random_vector(rng, n);
    const auto y = testing_util::random_vector(rng, n);
    ASSERT_FALSE(has_ties(x));
    EXPECT_NEAR(spearman_rank_difference(x, y), spearman_from_ranks(x, y), 1e-12);
    EXPECT_NEAR(spearman(x, y), static_cast<double>(big_pearson(naive_ranks(x), naive_ranks(y))),
                1e-12);
  }
}

TEST(Spearman, TiedInputUsesAverageRanks) {
  const std::vector<double> x{1, 2, 2, 3, 4}, y{2, 1, 3, 3, 5};
  EXPECT_DOUBLE_EQ(spearman(x, y), pearson(average_ranks(x), average_ranks(y)));
}

TEST(KolmogorovSurvival, FrozenReferenceValues) {
  // Limiting Kolmogorov distribution survival function reference values.
  const std::pair<double, double> ref[] = {{0.2, 0.999999999999495},
                                           {0.5, 0.9639452436648751},
                                           {0.7071067811865476, 0.6993741991310154},
                                           {1.0, 0.26999967167735456},
                                           {1.18, 0.1234538094297657},
                                           {1.5, 0.022217962616525127},
                                           {2.0, 0.0006709252557796953},
                                           {3.0, 3.045995948942526e-08},
                                           {5.0, 3.8574996959278356e-22}};
  for (const auto& [lambda, p] : ref) {
    EXPECT_NEAR(kolmogorov_survival(lambda) / p, 1.0, 1e-10) << "lambda=" << lambda;
  }
  EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
}

TEST(KsTwoSample, Examples) {
  const std::vector<double> x{1, 2, 3, 4}, y{3, 4, 5, 6};
  const auto r = ks_two_sample(x, y);
  EXPECT_DOUBLE_EQ(r.statistic, 0.5);
  EXPECT_NEAR(r.p_value, 0.6993741991310154, 1e-12);
  const auto same = ks_two_sample(x, x);
  EXPECT_EQ(same.statistic, 0.0);
  EXPECT_EQ(same.p_value, 1.0);
}

TEST(KsTwoSample, EmptySample) {
  const std::vector<double> x{1, 2}, e;
  EXPECT_THROW(ks_two_sample(x, e), ValidationError);
}

TEST(KsTwoSample, SymmetryAndDuplication) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = testing_util::random_vector(rng, 1 + rng.below(40), 5.0);
    auto y = testing_util::random_vector(rng, 1 + rng.below(40), 5.0);
    for (auto& v : x) v = std::round(v * 5) / 5;  // induce ties
    const auto a = ks_two_sample(x, y), b = ks_two_sample(y, x);
    EXPECT_EQ(a.statistic, b.statistic);
    EXPECT_EQ(a.p_value, b.p_value);
    EXPECT_GE(a.statistic, 0.0);
    EXPECT_LE(a.statistic, 1.0);
    auto xx = x, yy = y;
    xx.insert(xx.end(), x.begin(), x.end());
    yy.insert(yy.end(), y.begin(), y.end());
    EXPECT_EQ(ks_two_sample(xx, yy).statistic, a.statistic);
  }
}

TEST(KsTwoSample, MatchesDirectCdfSweep) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = testing_util::random_vector(rng, 1 + rng.below(30), 5.0);
    auto y = testing_util::random_vector(rng, 1 + rng.below(30), 5.0);
    for (auto& v : x) v = std::round(v);
    for (auto& v : y) v = std::round(v);
    double d = 0.0;
    std::vector<double> pooled(x);
    pooled.insert(pooled.end(), y.begin(), y.end());
    for (double t : pooled) {
      const double fx = std::count_if(x.begin(), x.end(), [t](double v) { return v <= t; }) /
                        static_cast<double>(x.size());
      const double fy = std::count_if(y.begin(), y.end(), [t](double v) { return v <= t; }) /
                        static_cast<double>(y.size());
      d = std::max(d, std::abs(fx - fy));
    }
    EXPECT_NEAR(ks_two_sample(x, y).statistic, d, 1e-15);
  }
}

TEST(StratifiedFolds, TenLabelsTwoBinsTwoFolds) {
  const std::vector<double> labels{0.1, 0.5, 1.2, 2.0, 2.4, 2.6, 3.0, 4.0, 4.5, 5.0};
  const auto s = stratified_folds(labels, 2, 2, 42);
  EXPECT_EQ(s.fold_members(0).size(), 5u);
  EXPECT_EQ(s.fold_members(1).size(), 5u);
  for (std::size_t b = 0; b < 2; ++b) {
    std::size_t c[2] = {0, 0};
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (s.bin[i] == b) ++c[s.fold[i]];
    }
    EXPECT_LE(std::max(c[0], c[1]) - std::min(c[0], c[1]), 1u);
  }
}

TEST(StratifiedFolds, DeterministicAndBalanced) {
  Rng rng(4);
  const auto labels = testing_util::random_vector(rng, 503, 5.0);
  const auto a = stratified_folds(labels, 10, 3, 9);
  const auto b = stratified_folds(labels, 10, 3, 9);
  EXPECT_EQ(a.fold, b.fold);
  EXPECT_NE(a.fold, stratified_folds(labels, 10, 3, 10).fold);
  for (std::size_t bin = 0; bin < 10; ++bin) {
    std::vector<std::size_t> c(3, 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (a.bin[i] == bin) ++c[a.fold[i]];
    }
    EXPECT_LE(*std::max_element(c.begin(), c.end()) - *std::min_element(c.begin(), c.end()), 1u);
  }
  std::size_t total = 0;
  for (std::size_t f = 0; f < 3; ++f) total += a.fold_members(f).size();
  EXPECT_EQ(total, labels.size());
}

TEST(StratifiedFolds, SingleBinIsShuffledKFold) {
  std::vector<double> labels(12);
  std::iota(labels.begin(), labels.end(), 0.0);
  for (auto& v : labels) v /= 3.0;
  const auto s = stratified_folds(labels, 1, 4, 1);
  for (auto b : s.bin) EXPECT_EQ(b, 0u);
  for (std::size_t f = 0; f < 4; ++f) EXPECT_EQ(s.fold_members(f).size(), 3u);
}

TEST(StratifiedFolds, Preconditions) {
  const std::vector<double> labels{1, 2, 3};
  EXPECT_THROW(stratified_folds(labels, 2, 4, 0), ValidationError);
  EXPECT_THROW(stratified_folds(labels, 0, 2, 0), ValidationError);
  EXPECT_THROW(stratified_folds(labels, 2, 1, 0), ValidationError);
}
