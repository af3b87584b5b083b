#include "stsb/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stsb/errors.hpp"
#include "stsb/rng.hpp"

namespace stsb {

std::string_view to_string(Loss loss) {
  return loss == Loss::squared ? "squared" : "cross_entropy";
}

Loss parse_loss(std::string_view name) {
  if (name == "squared") return Loss::squared;
  if (name == "cross_entropy") return Loss::cross_entropy;
  throw ValidationError("unknown loss '" + std::string(name) + "'");
}

void GbdtConfig::validate() const {
  if (n_trees < 1) throw ValidationError("n_trees must be at least 1");
  if (max_depth < 0) throw ValidationError("max_depth must be non-negative");
  if (!(shrinkage > 0.0 && shrinkage <= 1.0)) throw ValidationError("shrinkage must be in (0,1]");
  if (min_samples_leaf < 1) throw ValidationError("min_samples_leaf must be at least 1");
  if (histogram_bins < 2) throw ValidationError("histogram_bins must be at least 2");
  if (!(goss_top_fraction >= 0.0) || !(goss_other_fraction >= 0.0)) {
    throw ValidationError("GOSS fractions must be non-negative");
  }
  if (goss_top_fraction + goss_other_fraction > 1.0 + 1e-12) {
    throw ValidationError("GOSS fractions must satisfy a + b <= 1");
  }
  if (goss_top_fraction == 0.0 && goss_other_fraction == 0.0) {
    throw ValidationError("GOSS with a = 0 and b = 0 keeps no rows");
  }
}

namespace {

std::size_t ceil_count(double fraction, std::size_t n) {
  // tolerate products like 0.7*10 = 7.000000000000001
  const double raw = fraction * static_cast<double>(n) - 1e-9;
  const auto c = static_cast<std::size_t>(std::max(0.0, std::ceil(raw)));
  return std::min(c, n);
}

}  // namespace

GossSample goss_sample(std::span<const double> gradients, double a, double b,
                       std::uint64_t seed) {
  const std::size_t n = gradients.size();
  if (n == 0) throw ValidationError("GOSS needs at least one row");
  if (!(a >= 0.0) || !(b >= 0.0) || a + b > 1.0 + 1e-12) {
    throw ValidationError("GOSS fractions must satisfy a, b >= 0 and a + b <= 1");
  }
  if (a == 0.0 && b == 0.0) throw ValidationError("GOSS with a = 0 and b = 0 keeps no rows");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(gradients[x]) > std::abs(gradients[y]);
  });
  const std::size_t top = ceil_count(a, n);
  std::vector<double> weight(n, 0.0);
  for (std::size_t i = 0; i < top; ++i) weight[order[i]] = 1.0;

  if (b > 0.0 && top < n) {
    std::vector<std::size_t> rest(order.begin() + static_cast<std::ptrdiff_t>(top), order.end());
    std::sort(rest.begin(), rest.end());
    const std::size_t draw = std::min(ceil_count(b, n), rest.size());
    const double amplify = (1.0 - a) / b;
    Rng rng(seed);
    for (std::size_t i = 0; i < draw; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(rest.size() - i));
      std::swap(rest[i], rest[j]);
      weight[rest[i]] = amplify;
    }
  }
  GossSample s;
  for (std::size_t i = 0; i < n; ++i) {
    if (weight[i] > 0.0) {
      s.rows.push_back(i);
      s.weights.push_back(weight[i]);
    }
  }
  return s;
}

double logistic(double margin) {
  const double z = std::clamp(margin, -36.0, 36.0);
  return 1.0 / (1.0 + std::exp(-z));
}

double TreeEnsemble::margin(std::span<const double> row) const {
  double f = base_prediction;
  for (const auto& t : trees) f += shrinkage * t.predict(row);
  return f;
}

double TreeEnsemble::predict(std::span<const double> row) const {
  const double f = margin(row);
  return loss == Loss::cross_entropy ? logistic(f) : f;
}

std::vector<double> TreeEnsemble::predict(DesignView x) const {
  std::vector<double> out(x.n_rows);
  for (std::size_t r = 0; r < x.n_rows; ++r) out[r] = predict(x.row(r));
  return out;
}

TreeEnsemble train_gbdt(const FeatureMatrix& m, const GbdtConfig& config, GbdtTrace* trace) {
  config.validate();
  const std::size_t n = m.n_rows;
  if (n < 2) throw ValidationError("train_gbdt needs at least 2 rows");
  if (m.targets.size() != n || m.cells.size() != n * m.n_cols()) {
    throw ValidationError("feature matrix shape is inconsistent");
  }
  for (double v : m.cells) {
    if (!std::isfinite(v)) throw ValidationError("non-finite cell in feature matrix");
  }
  for (double y : m.targets) {
    if (!std::isfinite(y)) throw ValidationError("non-finite target");
    if (config.loss == Loss::cross_entropy && (y < 0.0 || y > 1.0)) {
      throw ValidationError("cross-entropy targets must lie in [0,1]");
    }
  }

  TreeEnsemble model;
  model.shrinkage = config.shrinkage;
  model.loss = config.loss;
  model.config = config;

  long double sum = 0.0L;
  for (double y : m.targets) sum += y;
  const double mean = static_cast<double>(sum / static_cast<long double>(n));
  if (config.loss == Loss::squared) {
    model.base_prediction = mean;
  } else {
    const double p = std::clamp(mean, 1e-6, 1.0 - 1e-6);
    model.base_prediction = std::log(p / (1.0 - p));
  }

  const DesignView x(m);
  TreeParams params;
  params.max_depth = config.max_depth;
  params.min_samples_leaf = config.min_samples_leaf;
  params.histogram_bins = config.histogram_bins;
  params.l2 = config.loss == Loss::squared ? 0.0 : 1e-6;

  std::vector<std::size_t> all_rows(n);
  std::iota(all_rows.begin(), all_rows.end(), 0);
  const FeatureBins bins =
      bin_features(x, all_rows, std::vector<double>(n, 1.0), config.histogram_bins);

  std::vector<double> margin(n, model.base_prediction), grad(n), hess(n);
  for (std::size_t iter = 0; iter < config.n_trees; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      if (config.loss == Loss::squared) {
        grad[i] = margin[i] - m.targets[i];
        hess[i] = 1.0;
      } else {
        const double p = logistic(margin[i]);
        grad[i] = p - m.targets[i];
        hess[i] = p * (1.0 - p) + 1e-12;
      }
    }
    const auto sample = goss_sample(grad, config.goss_top_fraction, config.goss_other_fraction,
                                    splitmix64(config.seed) + iter);
    RegressionTree tree = fit_tree(x, bins, grad, hess, sample.rows, sample.weights, params);
    for (std::size_t i = 0; i < n; ++i) margin[i] += config.shrinkage * tree.predict(x.row(i));
    model.trees.push_back(std::move(tree));
    if (trace) {
      long double sse = 0.0L;
      for (std::size_t i = 0; i < n; ++i) {
        const double pred = config.loss == Loss::squared ? margin[i] : logistic(margin[i]);
        const long double e = pred - m.targets[i];
        sse += e * e;
      }
      trace->train_mse.push_back(static_cast<double>(sse / static_cast<long double>(n)));
    }
  }
  return model;
}

}  // namespace stsb
