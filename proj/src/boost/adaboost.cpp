#include "stsb/adaboost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stsb/errors.hpp"

namespace stsb {

std::string_view to_string(AdaLoss loss) {
  switch (loss) {
    case AdaLoss::linear: return "linear";
    case AdaLoss::square: return "square";
    case AdaLoss::exponential: return "exponential";
  }
  return "?";
}

AdaLoss parse_ada_loss(std::string_view name) {
  if (name == "linear") return AdaLoss::linear;
  if (name == "square") return AdaLoss::square;
  if (name == "exponential") return AdaLoss::exponential;
  throw ValidationError("unknown AdaBoost loss '" + std::string(name) + "'");
}

void AdaBoostConfig::validate() const {
  if (rounds < 1) throw ValidationError("AdaBoost needs at least one round");
  if (max_depth < 0) throw ValidationError("max_depth must be non-negative");
  if (min_samples_leaf < 1) throw ValidationError("min_samples_leaf must be at least 1");
  if (histogram_bins < 2) throw ValidationError("histogram_bins must be at least 2");
}

namespace {

// Neumaier-compensated sum.
double stable_sum(std::span<const double> v) {
  double sum = 0.0, c = 0.0;
  for (double x : v) {
    const double t = sum + x;
    c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

}  // namespace

double AdaBoostModel::predict(std::span<const double> row) const {
  const std::size_t t = learners.size();
  if (t == 0) return 0.0;
  std::vector<std::pair<double, double>> pw(t);
  for (std::size_t i = 0; i < t; ++i) pw[i] = {learners[i].predict(row), learner_weights[i]};
  std::stable_sort(pw.begin(), pw.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  double total = 0.0;
  for (const auto& p : pw) total += p.second;
  double cum = 0.0;
  for (const auto& [pred, w] : pw) {
    cum += w;
    if (cum >= 0.5 * total) return pred;
  }
  return pw.back().first;
}

std::vector<double> AdaBoostModel::predict(DesignView x) const {
  std::vector<double> out(x.n_rows);
  for (std::size_t r = 0; r < x.n_rows; ++r) out[r] = predict(x.row(r));
  return out;
}

AdaBoostModel train_adaboost_r2(const FeatureMatrix& m, const AdaBoostConfig& config,
                                std::vector<AdaRound>* trace) {
  config.validate();
  const std::size_t n = m.n_rows;
  if (n < 1) throw ValidationError("AdaBoost needs at least one row");
  for (double v : m.cells) {
    if (!std::isfinite(v)) throw ValidationError("non-finite cell in feature matrix");
  }
  for (double y : m.targets) {
    if (!std::isfinite(y)) throw ValidationError("non-finite target");
  }

  AdaBoostModel model;
  model.loss_kind = config.loss;
  model.config = config;

  const DesignView x(m);
  TreeParams params;
  params.max_depth = config.max_depth;
  params.min_samples_leaf = config.min_samples_leaf;
  params.histogram_bins = config.histogram_bins;

  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<std::size_t> all_rows(n);
  std::iota(all_rows.begin(), all_rows.end(), 0);
  const FeatureBins bins = bin_features(x, all_rows, w, config.histogram_bins);
  std::vector<double> grad(n), hess(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) grad[i] = -m.targets[i];

  std::vector<double> err(n), loss(n);
  for (std::size_t round = 0; round < config.rounds; ++round) {
    RegressionTree tree = fit_tree(x, bins, grad, hess, all_rows, w, params);
    double max_err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = std::abs(tree.predict(x.row(i)) - m.targets[i]);
      max_err = std::max(max_err, err[i]);
    }
    AdaRound info;
    double avg = 0.0;
    if (max_err > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        const double r = err[i] / max_err;
        switch (config.loss) {
          case AdaLoss::linear: loss[i] = r; break;
          case AdaLoss::square: loss[i] = r * r; break;
          case AdaLoss::exponential: loss[i] = 1.0 - std::exp(-r); break;
        }
        avg += w[i] * loss[i];
      }
    }
    info.average_loss = avg;

    if (avg <= 0.0) {
      // exact fit: this learner decides every prediction
      const double prior = std::accumulate(model.learner_weights.begin(),
                                           model.learner_weights.end(), 0.0);
      model.learners.push_back(std::move(tree));
      model.learner_weights.push_back(prior + 1.0);
      info.beta = 0.0;
      info.kept = true;
      info.weight_sum = stable_sum(w);
      info.weights = w;
      if (trace) trace->push_back(std::move(info));
      break;
    }
    if (avg >= 0.5) {
      info.beta = avg / (1.0 - avg);
      if (model.learners.empty()) {
        model.learners.push_back(std::move(tree));
        model.learner_weights.push_back(1.0);
        info.kept = true;
      }
      info.weight_sum = stable_sum(w);
      info.weights = w;
      if (trace) trace->push_back(std::move(info));
      break;
    }

    const double beta = avg / (1.0 - avg);
    for (std::size_t i = 0; i < n; ++i) w[i] *= std::pow(beta, 1.0 - loss[i]);
    const double total = stable_sum(w);
    for (auto& v : w) v /= total;

    model.learners.push_back(std::move(tree));
    model.learner_weights.push_back(std::log(1.0 / beta));
    info.beta = beta;
    info.kept = true;
    info.weight_sum = stable_sum(w);
    if (trace) {
      info.weights = w;
      trace->push_back(std::move(info));
    }
  }
  return model;
}

}  // namespace stsb
