#include "stsb/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "stsb/csv.hpp"
#include "stsb/errors.hpp"
#include "stsb/stats.hpp"

namespace stsb {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::adaboost: return "adaboost";
    case Algorithm::gbdt: return "gbdt";
    case Algorithm::goss: return "goss";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "adaboost") return Algorithm::adaboost;
  if (name == "gbdt") return Algorithm::gbdt;
  if (name == "goss") return Algorithm::goss;
  throw ValidationError("unknown algorithm '" + std::string(name) + "'");
}

SelectionMetric parse_metric(std::string_view name) {
  if (name == "pearson") return SelectionMetric::pearson;
  if (name == "spearman") return SelectionMetric::spearman;
  throw ValidationError("unknown selection metric '" + std::string(name) + "'");
}

std::string GridPoint::describe() const {
  std::ostringstream s;
  if (algorithm == Algorithm::adaboost) {
    s << "rounds=" << ada.rounds << ";loss=" << to_string(ada.loss)
      << ";max_depth=" << ada.max_depth << ";min_samples_leaf=" << ada.min_samples_leaf
      << ";bins=" << ada.histogram_bins;
    return s.str();
  }
  s << "loss=" << to_string(gbdt.loss) << ";n_trees=" << gbdt.n_trees
    << ";max_depth=" << gbdt.max_depth << ";shrinkage=" << csv::format_double(gbdt.shrinkage)
    << ";min_samples_leaf=" << gbdt.min_samples_leaf << ";bins=" << gbdt.histogram_bins;
  if (algorithm == Algorithm::goss) {
    s << ";goss_a=" << csv::format_double(gbdt.goss_top_fraction)
      << ";goss_b=" << csv::format_double(gbdt.goss_other_fraction);
  }
  return s.str();
}

namespace {

using json = nlohmann::json;

// Default value lists per key; product order follows the listed key order.
json default_spec(Algorithm a) {
  if (a == Algorithm::adaboost) {
    return json{{"rounds", {50, 100, 200}},
                {"loss", {"linear", "square", "exponential"}},
                {"max_depth", {3}},
                {"min_samples_leaf", {1}},
                {"histogram_bins", {64}}};
  }
  json spec{{"shrinkage", {0.03, 0.1, 0.3}},
            {"n_trees", {100, 300, 500}},
            {"max_depth", {2, 3, 4}},
            {"loss", {"squared"}},
            {"min_samples_leaf", {a == Algorithm::goss ? 20 : 1}},
            {"histogram_bins", {64}}};
  if (a == Algorithm::goss) {
    spec["goss_top_fraction"] = {0.2};
    spec["goss_other_fraction"] = {0.1};
  }
  return spec;
}

std::vector<std::string> key_order(Algorithm a) {
  if (a == Algorithm::adaboost) {
    return {"rounds", "loss", "max_depth", "min_samples_leaf", "histogram_bins"};
  }
  std::vector<std::string> keys{"shrinkage",        "n_trees",       "max_depth",
                                "loss",             "min_samples_leaf", "histogram_bins"};
  if (a == Algorithm::goss) {
    keys.emplace_back("goss_top_fraction");
    keys.emplace_back("goss_other_fraction");
  }
  return keys;
}

void apply(GridPoint& p, const std::string& key, const json& v) {
  try {
    if (p.algorithm == Algorithm::adaboost) {
      if (key == "rounds") p.ada.rounds = v.get<std::size_t>();
      else if (key == "loss") p.ada.loss = parse_ada_loss(v.get<std::string>());
      else if (key == "max_depth") p.ada.max_depth = v.get<int>();
      else if (key == "min_samples_leaf") p.ada.min_samples_leaf = v.get<std::size_t>();
      else if (key == "histogram_bins") p.ada.histogram_bins = v.get<std::size_t>();
      return;
    }
    if (key == "shrinkage") p.gbdt.shrinkage = v.get<double>();
    else if (key == "n_trees") p.gbdt.n_trees = v.get<std::size_t>();
    else if (key == "max_depth") p.gbdt.max_depth = v.get<int>();
    else if (key == "loss") p.gbdt.loss = parse_loss(v.get<std::string>());
    else if (key == "min_samples_leaf") p.gbdt.min_samples_leaf = v.get<std::size_t>();
    else if (key == "histogram_bins") p.gbdt.histogram_bins = v.get<std::size_t>();
    else if (key == "goss_top_fraction") p.gbdt.goss_top_fraction = v.get<double>();
    else if (key == "goss_other_fraction") p.gbdt.goss_other_fraction = v.get<double>();
  } catch (const json::exception& e) {
    throw ValidationError("grid value for '" + key + "': " + e.what());
  }
}

}  // namespace

std::vector<GridPoint> grid_from_json(Algorithm a, const json& spec, std::uint64_t seed) {
  json merged = default_spec(a);
  if (!spec.is_null()) {
    if (!spec.is_object()) throw ValidationError("grid for " + std::string(to_string(a)) +
                                                 " must be an object");
    for (const auto& [key, values] : spec.items()) {
      if (!merged.contains(key)) {
        throw ValidationError("unknown grid key '" + key + "' for " + std::string(to_string(a)));
      }
      merged[key] = values.is_array() ? values : json::array({values});
      if (merged[key].empty()) throw ValidationError("empty grid list for '" + key + "'");
    }
  }
  const auto keys = key_order(a);
  std::vector<GridPoint> points;
  std::vector<std::size_t> idx(keys.size(), 0);
  while (true) {
    GridPoint p;
    p.algorithm = a;
    p.gbdt.seed = seed;
    p.ada.seed = seed;
    for (std::size_t k = 0; k < keys.size(); ++k) apply(p, keys[k], merged[keys[k]][idx[k]]);
    if (a == Algorithm::adaboost) {
      p.ada.validate();
    } else {
      p.gbdt.validate();
    }
    points.push_back(p);
    // odometer, last key fastest
    bool wrapped = true;
    for (std::size_t k = keys.size(); k-- > 0;) {
      if (++idx[k] < merged[keys[k]].size()) {
        wrapped = false;
        break;
      }
      idx[k] = 0;
    }
    if (wrapped) return points;
  }
}

GridPoint point_from_json(Algorithm a, const json& params, std::uint64_t seed) {
  GridPoint p;
  p.algorithm = a;
  p.gbdt.seed = seed;
  p.ada.seed = seed;
  if (a == Algorithm::goss) {
    p.gbdt.min_samples_leaf = 20;
    p.gbdt.goss_top_fraction = 0.2;
    p.gbdt.goss_other_fraction = 0.1;
  }
  if (!params.is_null()) {
    if (!params.is_object()) throw ValidationError("model parameters must be an object");
    const auto keys = key_order(a);
    for (const auto& [key, value] : params.items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw ValidationError("unknown parameter '" + key + "' for " + std::string(to_string(a)));
      }
      apply(p, key, value);
    }
  }
  if (a == Algorithm::adaboost) {
    p.ada.validate();
  } else {
    p.gbdt.validate();
  }
  return p;
}

std::vector<GridPoint> default_grid(Algorithm a, std::uint64_t seed) {
  return grid_from_json(a, json(), seed);
}

std::vector<double> StackingModel::predict(const FeatureMatrix& m) const {
  const FeatureMatrix x = select_score_columns(m, models);
  if (x.column_names != column_names) {
    throw AlignmentError("matrix columns do not match the model's training columns");
  }
  std::vector<double> out = std::visit([&](const auto& f) { return f.predict(DesignView(x)); },
                                       fitted);
  if (target_scale != 1.0) {
    for (auto& v : out) v *= target_scale;
  }
  return out;
}

StackingModel train_stacking(const FeatureMatrix& train, const std::vector<std::string>& models,
                             const GridPoint& point, LabelRange range) {
  StackingModel sm;
  sm.algorithm = point.algorithm;
  sm.models = models;
  sm.label_range = range;
  FeatureMatrix x = select_score_columns(train, models);
  sm.column_names = x.column_names;
  if (point.algorithm == Algorithm::adaboost) {
    sm.fitted = train_adaboost_r2(x, point.ada);
    return sm;
  }
  if (point.gbdt.loss == Loss::cross_entropy) {
    sm.target_scale = range_max(range);
    for (auto& y : x.targets) y /= sm.target_scale;
  }
  sm.fitted = train_gbdt(x, point.gbdt);
  return sm;
}

std::pair<double, double> correlation_pair(std::span<const double> pred,
                                           std::span<const double> truth) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  double p = nan, s = nan;
  try {
    p = pearson(pred, truth);
  } catch (const UndefinedCorrelationError&) {
  }
  try {
    s = spearman(pred, truth);
  } catch (const UndefinedCorrelationError&) {
  }
  return {p, s};
}

GridReport grid_search(const std::vector<std::vector<GridPoint>>& grids,
                       const std::vector<std::vector<std::string>>& subsets,
                       const FeatureMatrix& train, const FeatureMatrix& dev,
                       SelectionMetric metric, LabelRange range, std::size_t jobs) {
  if (train.split == dev.split) {
    throw ValidationError("grid search needs distinct train and dev splits");
  }
  GridReport report;
  for (const auto& grid : grids) {
    for (const auto& subset : subsets) {
      for (const auto& point : grid) {
        GridRow row;
        row.algorithm = point.algorithm;
        row.subset = subset;
        row.point = point;
        report.rows.push_back(std::move(row));
      }
    }
  }
  if (report.rows.empty()) throw ValidationError("grid search has no cells to evaluate");

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= report.rows.size()) return;
      auto& row = report.rows[i];
      try {
        const auto model = train_stacking(train, row.subset, row.point, range);
        const auto dev_pred = model.predict(dev);
        const auto train_pred = model.predict(train);
        std::tie(row.dev_pearson, row.dev_spearman) = correlation_pair(dev_pred, dev.targets);
        std::tie(row.train_pearson, row.train_spearman) =
            correlation_pair(train_pred, train.targets);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(report.rows.size());
      }
    }
  };
  const std::size_t n_workers = std::max<std::size_t>(1, std::min(jobs, report.rows.size()));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  auto value = [&](const GridRow& r) {
    return metric == SelectionMetric::pearson ? r.dev_pearson : r.dev_spearman;
  };
  std::size_t best = report.rows.size();
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const double v = value(report.rows[i]);
    if (std::isnan(v)) continue;
    if (best == report.rows.size() || v > value(report.rows[best])) best = i;
  }
  report.best = best == report.rows.size() ? 0 : best;
  return report;
}

void write_grid_report_csv(std::ostream& out, const GridReport& report) {
  out << "algorithm,subset,params,dev_pearson,dev_spearman,train_pearson,train_spearman\n";
  for (const auto& r : report.rows) {
    out << to_string(r.algorithm) << ',' << join_subset(r.subset) << ',' << r.point.describe()
        << ',' << csv::format_double(r.dev_pearson) << ',' << csv::format_double(r.dev_spearman)
        << ',' << csv::format_double(r.train_pearson) << ','
        << csv::format_double(r.train_spearman) << '\n';
  }
}

}  // namespace stsb
