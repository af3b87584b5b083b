#pragma once

// Second-stage (stacking) regressors and grid search over algorithm
// settings and score-column subsets.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "stsb/adaboost.hpp"
#include "stsb/corpus.hpp"
#include "stsb/gbdt.hpp"
#include "stsb/scores.hpp"

namespace stsb {

/// `gbdt` grows trees on every row (XGBoost-style), `goss` samples rows by
/// gradient magnitude (LightGBM-style), `adaboost` is AdaBoost.R2.
enum class Algorithm { adaboost, gbdt, goss };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct GridPoint {
  Algorithm algorithm = Algorithm::gbdt;
  GbdtConfig gbdt;
  AdaBoostConfig ada;

  /// `key=value;...` rendering used in reports.
  std::string describe() const;
};

/// Built-in grid for one algorithm.
std::vector<GridPoint> default_grid(Algorithm a, std::uint64_t seed);

/// Cartesian grid from a JSON object of value lists, e.g.
/// {"shrinkage":[0.1,0.3],"n_trees":[100]}. Missing keys use the default
/// lists; unknown keys are a ValidationError.
std::vector<GridPoint> grid_from_json(Algorithm a, const nlohmann::json& spec,
                                      std::uint64_t seed);

/// One configuration: struct defaults (GOSS: a=0.2, b=0.1, 20 rows per
/// leaf) overridden by scalar values in `params`.
GridPoint point_from_json(Algorithm a, const nlohmann::json& params, std::uint64_t seed);

/// A fitted second-stage model bound to the score columns it was trained on.
struct StackingModel {
  Algorithm algorithm = Algorithm::gbdt;
  std::vector<std::string> models;        ///< score columns used, in order
  std::vector<std::string> column_names;  ///< full design columns
  LabelRange label_range = LabelRange::five;
  /// Targets are divided by this before fitting and predictions multiplied
  /// back, so cross-entropy boosting sees [0,1] targets on either scale.
  double target_scale = 1.0;
  std::variant<TreeEnsemble, AdaBoostModel> fitted;

  /// Predicts rows of a matrix that contains (at least) this model's score
  /// columns plus the handcrafted columns.
  std::vector<double> predict(const FeatureMatrix& m) const;
};

StackingModel train_stacking(const FeatureMatrix& train, const std::vector<std::string>& models,
                             const GridPoint& point, LabelRange range);

enum class SelectionMetric { pearson, spearman };
SelectionMetric parse_metric(std::string_view name);

struct GridRow {
  Algorithm algorithm = Algorithm::gbdt;
  std::vector<std::string> subset;
  GridPoint point;
  double dev_pearson = 0.0, dev_spearman = 0.0;
  double train_pearson = 0.0, train_spearman = 0.0;
};

struct GridReport {
  std::vector<GridRow> rows;  ///< enumeration order
  std::size_t best = 0;
};

/// Trains every (algorithm, subset, grid point) cell on `train`, scores it
/// on `dev`, and picks the highest dev metric; the first cell in enumeration
/// order wins ties. Cells whose metric is undefined (constant predictions)
/// are reported as NaN and never selected unless every cell is NaN.
/// `jobs` workers train cells concurrently; row order is unaffected.
GridReport grid_search(const std::vector<std::vector<GridPoint>>& grids,
                       const std::vector<std::vector<std::string>>& subsets,
                       const FeatureMatrix& train, const FeatureMatrix& dev,
                       SelectionMetric metric, LabelRange range, std::size_t jobs = 1);

void write_grid_report_csv(std::ostream& out, const GridReport& report);

/// Pearson/Spearman pair that yields NaN instead of throwing for constant input.
std::pair<double, double> correlation_pair(std::span<const double> pred,
                                           std::span<const double> truth);

}  // namespace stsb
