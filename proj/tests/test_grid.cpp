#include <gtest/gtest.h>

#include <sstream>

#include "helpers.hpp"
#include "stsb/errors.hpp"
#include "stsb/grid.hpp"
#include "stsb/model_io.hpp"
#include "stsb/text.hpp"

using namespace stsb;

namespace {

// Three noisy copies of the target plus 12 handcrafted-named columns.
std::pair<FeatureMatrix, FeatureMatrix> stacked(std::uint64_t seed) {
  Rng rng(seed);
  auto make = [&](std::size_t n, Split s) {
    FeatureMatrix m;
    m.split = s;
    m.n_rows = n;
    m.column_names = {"m1", "m2", "m3"};
    for (auto name : pair_feature_names()) m.column_names.emplace_back(name);
    m.targets.resize(n);
    m.cells.resize(n * m.n_cols());
    for (std::size_t r = 0; r < n; ++r) {
      const double y = 5 * rng.uniform();
      m.targets[r] = y;
      for (std::size_t c = 0; c < 3; ++c) m.cells[r * m.n_cols() + c] = y + (c + 1) * (rng.uniform() - 0.5);
      for (std::size_t c = 3; c < m.n_cols(); ++c) m.cells[r * m.n_cols() + c] = rng.below(10);
    }
    return m;
  };
  return {make(200, Split::train), make(80, Split::dev)};
}

std::vector<GridPoint> small_grid(Algorithm a) {
  return grid_from_json(a, nlohmann::json{{"n_trees", {10, 20}}, {"max_depth", {2}},
                                           {"shrinkage", {0.3}}},
                        1);
}

}  // namespace

TEST(Grid, DefaultSizes) {
  EXPECT_EQ(default_grid(Algorithm::gbdt, 0).size(), 27u);
  EXPECT_EQ(default_grid(Algorithm::goss, 0).size(), 27u);
  EXPECT_EQ(default_grid(Algorithm::adaboost, 0).size(), 9u);
  EXPECT_THROW(grid_from_json(Algorithm::gbdt, nlohmann::json{{"bogus", {1}}}, 0),
               ValidationError);
  EXPECT_THROW(grid_from_json(Algorithm::gbdt, nlohmann::json{{"n_trees", nlohmann::json::array()}}, 0),
               ValidationError);
  const auto p = point_from_json(Algorithm::goss, nlohmann::json{{"n_trees", 7}}, 3);
  EXPECT_EQ(p.gbdt.n_trees, 7u);
  EXPECT_EQ(p.gbdt.goss_top_fraction, 0.2);
  EXPECT_EQ(p.gbdt.seed, 3u);
}

TEST(GridSearch, ReportSize) {
  const auto [train, dev] = stacked(1);
  const std::vector<std::string> models{"m1", "m2", "m3"};
  const auto subsets = enumerate_subsets(models, {2, 3});
  const auto report = grid_search({small_grid(Algorithm::gbdt)}, subsets, train, dev,
                                  SelectionMetric::pearson, LabelRange::five);
  EXPECT_EQ(report.rows.size(), 8u);
  double best = -2;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    if (report.rows[i].dev_pearson > best) {
      best = report.rows[i].dev_pearson;
      arg = i;
    }
  }
  EXPECT_EQ(report.best, arg);
  std::ostringstream out;
  write_grid_report_csv(out, report);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "algorithm,subset,params,dev_pearson,dev_spearman,train_pearson,train_spearman");
}

TEST(GridSearch, SingleCellAndTies) {
  const auto [train, dev] = stacked(2);
  const std::vector<std::vector<std::string>> one{{"m1"}};
  auto grid = small_grid(Algorithm::gbdt);
  grid.resize(1);
  auto r = grid_search({grid}, one, train, dev, SelectionMetric::pearson, LabelRange::five);
  EXPECT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.best, 0u);
  // Identical cells tie; the first wins.
  grid.push_back(grid[0]);
  r = grid_search({grid}, one, train, dev, SelectionMetric::spearman, LabelRange::five);
  EXPECT_EQ(r.rows[0].dev_spearman, r.rows[1].dev_spearman);
  EXPECT_EQ(r.best, 0u);
}

TEST(GridSearch, ThreadCountDoesNotChangeReport) {
  const auto [train, dev] = stacked(3);
  const std::vector<std::string> models{"m1", "m2", "m3"};
  const auto subsets = enumerate_subsets(models, {1, 2});
  const std::vector<std::vector<GridPoint>> grids{small_grid(Algorithm::gbdt),
                                                  small_grid(Algorithm::goss),
                                                  default_grid(Algorithm::adaboost, 0)};
  std::ostringstream a, b;
  write_grid_report_csv(a, grid_search(grids, subsets, train, dev, SelectionMetric::pearson,
                                       LabelRange::five, 1));
  write_grid_report_csv(b, grid_search(grids, subsets, train, dev, SelectionMetric::pearson,
                                       LabelRange::five, 4));
  EXPECT_EQ(a.str(), b.str());
}

TEST(GridSearch, Validation) {
  const auto [train, dev] = stacked(4);
  const std::vector<std::vector<std::string>> one{{"m1"}};
  EXPECT_THROW(grid_search({}, one, train, dev, SelectionMetric::pearson, LabelRange::five),
               ValidationError);
  EXPECT_THROW(grid_search({small_grid(Algorithm::gbdt)}, one, train, train,
                           SelectionMetric::pearson, LabelRange::five),
               ValidationError);
}

TEST(Stacking, CrossEntropyOnFiveScale) {
  const auto [train, dev] = stacked(5);
  auto p = point_from_json(Algorithm::gbdt, nlohmann::json{{"loss", "cross_entropy"}}, 0);
  const auto m = train_stacking(train, {"m1"}, p, LabelRange::five);
  EXPECT_EQ(m.target_scale, 5.0);
  for (double v : m.predict(dev)) {
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 5.0);
  }
}

TEST(ModelIo, SnapshotRoundTrip) {
  const auto [train, dev] = stacked(6);
  for (auto a : {Algorithm::gbdt, Algorithm::goss, Algorithm::adaboost}) {
    const auto m = train_stacking(train, {"m2", "m1"}, point_from_json(a, nullptr, 9),
                                  LabelRange::five);
    const auto doc = to_json(m);
    const auto back = stacking_from_json(nlohmann::json::parse(doc.dump()));
    EXPECT_EQ(back.predict(dev), m.predict(dev));
    EXPECT_EQ(to_json(back).dump(), doc.dump());
  }
  EXPECT_THROW(stacking_from_json(nlohmann::json{{"algorithm", "gbdt"}}), ValidationError);
}
