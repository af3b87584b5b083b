#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "stsb/adaboost.hpp"
#include "stsb/errors.hpp"

using namespace stsb;

namespace {

double mae(const AdaBoostModel& model, const FeatureMatrix& m) {
  double s = 0;
  for (std::size_t r = 0; r < m.n_rows; ++r) s += std::abs(model.predict(m.row(r)) - m.targets[r]);
  return s / static_cast<double>(m.n_rows);
}

}  // namespace

TEST(AdaBoost, WeightsStayDistribution) {
  Rng rng(31);
  for (int inst = 0; inst < 20; ++inst) {
    auto m = testing_util::random_matrix(rng, 50 + rng.below(150), 3);
    for (std::size_t r = 0; r < m.n_rows; ++r) {
      m.targets[r] = 5 * m.at(r, 0) * m.at(r, 1) + rng.uniform();
    }
    AdaBoostConfig c;
    c.rounds = 30;
    c.max_depth = 2;
    c.loss = static_cast<AdaLoss>(inst % 3);
    std::vector<AdaRound> trace;
    const auto model = train_adaboost_r2(m, c, &trace);
    ASSERT_FALSE(trace.empty());
    for (const auto& round : trace) {
      const double sum = std::accumulate(round.weights.begin(), round.weights.end(), 0.0);
      EXPECT_NEAR(sum, 1.0, 1e-12);
      EXPECT_NEAR(round.weight_sum, 1.0, 1e-12);
      for (double w : round.weights) EXPECT_GE(w, 0.0);
      if (round.average_loss > 0 && round.average_loss < 0.5) {
        EXPECT_GT(round.beta, 0.0);
        EXPECT_LT(round.beta, 1.0);
        EXPECT_TRUE(round.kept);
      }
    }
    EXPECT_EQ(model.learners.size(), model.learner_weights.size());
  }
}

TEST(AdaBoost, ZeroLossStopsWithThatLearner) {
  FeatureMatrix m;
  m.column_names = {"x"};
  m.n_rows = 6;
  m.cells = {0, 1, 2, 3, 4, 5};
  m.targets = {1, 1, 1, 4, 4, 4};
  AdaBoostConfig c;
  c.rounds = 10;
  c.max_depth = 1;
  std::vector<AdaRound> trace;
  const auto model = train_adaboost_r2(m, c, &trace);
  ASSERT_EQ(model.learners.size(), 1u);
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_EQ(trace[0].average_loss, 0.0);
  EXPECT_TRUE(trace[0].kept);
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    EXPECT_EQ(model.predict(m.row(r)), model.learners[0].predict(m.row(r)));
    EXPECT_EQ(model.predict(m.row(r)), m.targets[r]);
  }
}

TEST(AdaBoost, SingleRowGivesLeaf) {
  FeatureMatrix m;
  m.column_names = {"x"};
  m.n_rows = 1;
  m.cells = {0.3};
  m.targets = {2.0};
  const auto model = train_adaboost_r2(m, AdaBoostConfig{});
  ASSERT_EQ(model.learners.size(), 1u);
  EXPECT_EQ(model.learners[0].depth(), 0);
  EXPECT_EQ(model.predict(m.row(0)), 2.0);
}

TEST(AdaBoost, ImprovesOnPiecewiseConstantTarget) {
  Rng rng(44);
  auto m = testing_util::random_matrix(rng, 200, 2);
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    // additive staircase: 4 steps in x0 plus 3 in x1, more than one depth-2 tree can hold
    m.targets[r] = std::floor(m.at(r, 0) * 4) + std::floor(m.at(r, 1) * 3);
  }
  AdaBoostConfig c;
  c.max_depth = 2;
  c.rounds = 1;
  const double first = mae(train_adaboost_r2(m, c), m);
  c.rounds = 20;
  const double later = mae(train_adaboost_r2(m, c), m);
  EXPECT_LT(later, first);
}

TEST(AdaBoost, WeightedMedian) {
  // Three constant learners: the median by weight is the heaviest middle.
  std::vector<TreeNode> a(1), b(1), c(1);
  a[0].value = 1.0;
  b[0].value = 2.0;
  c[0].value = 10.0;
  AdaBoostModel model;
  model.learners = {RegressionTree(a), RegressionTree(b), RegressionTree(c)};
  model.learner_weights = {1.0, 1.0, 1.0};
  const std::vector<double> row{0.0};
  EXPECT_EQ(model.predict(row), 2.0);
  model.learner_weights = {1.0, 1.0, 3.0};
  EXPECT_EQ(model.predict(row), 10.0);
  model.learner_weights = {3.0, 1.0, 1.0};
  EXPECT_EQ(model.predict(row), 1.0);
}

TEST(AdaBoost, Validation) {
  AdaBoostConfig c;
  c.rounds = 0;
  EXPECT_THROW(c.validate(), ValidationError);
  FeatureMatrix empty;
  empty.column_names = {"x"};
  EXPECT_THROW(train_adaboost_r2(empty, AdaBoostConfig{}), ValidationError);
}
