#include "stsb/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "stsb/errors.hpp"

namespace stsb {

double RegressionTree::predict(std::span<const double> row) const {
  return nodes_[leaf_of(row)].value;
}

std::size_t RegressionTree::leaf_of(std::span<const double> row) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const auto& n = nodes_[i];
    i = static_cast<std::size_t>(row[n.feature] <= n.threshold ? n.left : n.right);
  }
  return i;
}

int RegressionTree::depth() const {
  if (nodes_.empty()) return 0;
  std::vector<int> d(nodes_.size(), 0);
  int best = 0;
  // pre-order: parents precede children
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (n.is_leaf()) {
      best = std::max(best, d[i]);
      continue;
    }
    d[n.left] = d[i] + 1;
    d[n.right] = d[i] + 1;
  }
  return best;
}

std::size_t RegressionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

namespace {

double midpoint(double a, double b) {
  const double mid = a + (b - a) * 0.5;
  return mid < b ? mid : a;
}

struct SplitChoice {
  int feature = -1;
  std::size_t bin = 0;
  double gain = 0.0;
};

struct Bucket {
  double g = 0.0;
  double h = 0.0;
  std::size_t count = 0;
};

class TreeBuilder {
 public:
  TreeBuilder(DesignView x, const FeatureBins& bins, std::span<const double> grad,
              std::span<const double> hess, std::span<const std::size_t> rows,
              std::span<const double> weights, const TreeParams& params)
      : x_(x), bins_(bins), grad_(grad), hess_(hess), rows_(rows), weights_(weights),
        params_(params) {}

  RegressionTree build() {
    std::vector<std::size_t> all(rows_.size());
    std::iota(all.begin(), all.end(), 0);
    grow(all, 0);
    return RegressionTree(std::move(nodes_));
  }

 private:
  double score(double g, double h) const {
    const double denom = h + params_.l2;
    return denom > 0.0 ? g * g / denom : 0.0;
  }

  int grow(const std::vector<std::size_t>& members, int depth) {
    double g = 0.0, h = 0.0;
    for (auto k : members) {
      const auto r = rows_[k];
      g += weights_[k] * grad_[r];
      h += weights_[k] * hess_[r];
    }
    const int index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    const double denom = h + params_.l2;
    nodes_[index].value = denom > 0.0 ? -g / denom : 0.0;

    if (depth >= params_.max_depth || members.size() < 2 * params_.min_samples_leaf) {
      return index;
    }
    const SplitChoice best = find_split(members, g, h);
    if (best.feature < 0) return index;

    const auto f = static_cast<std::size_t>(best.feature);
    std::vector<std::size_t> left, right;
    for (auto k : members) (bins_.code(rows_[k], f) <= best.bin ? left : right).push_back(k);
    nodes_[index].feature = best.feature;
    nodes_[index].threshold = bins_.thresholds[f][best.bin];
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    nodes_[index].left = l;
    nodes_[index].right = r;
    return index;
  }

  SplitChoice find_split(const std::vector<std::size_t>& members, double g, double h) {
    const double parent = score(g, h);
    // Gains within rounding noise of the parent score are not splits.
    SplitChoice best;
    best.gain = std::max(0.0, 1e-12 * std::abs(parent));
    const std::size_t m = members.size();
    for (std::size_t f = 0; f < x_.n_cols; ++f) {
      const std::size_t n_thresholds = bins_.thresholds[f].size();
      if (n_thresholds == 0) continue;
      hist_.assign(n_thresholds + 1, Bucket{});
      for (auto k : members) {
        const auto r = rows_[k];
        auto& b = hist_[bins_.code(r, f)];
        b.g += weights_[k] * grad_[r];
        b.h += weights_[k] * hess_[r];
        ++b.count;
      }
      double gl = 0.0, hl = 0.0;
      std::size_t nl = 0;
      for (std::size_t j = 0; j < n_thresholds; ++j) {
        if (hist_[j].count == 0) continue;  // same partition as a lower threshold
        gl += hist_[j].g;
        hl += hist_[j].h;
        nl += hist_[j].count;
        if (nl == m) break;
        if (nl < params_.min_samples_leaf || m - nl < params_.min_samples_leaf) continue;
        const double gain = score(gl, hl) + score(g - gl, h - hl) - parent;
        if (gain > best.gain) {
          best.gain = gain;
          best.feature = static_cast<int>(f);
          best.bin = j;
        }
      }
    }
    return best;
  }

  DesignView x_;
  const FeatureBins& bins_;
  std::span<const double> grad_, hess_;
  std::span<const std::size_t> rows_;
  std::span<const double> weights_;
  TreeParams params_;
  std::vector<Bucket> hist_;
  std::vector<TreeNode> nodes_;
};

void check_common(DesignView x, std::span<const std::size_t> rows,
                  std::span<const double> weights, std::size_t bins) {
  if (rows.empty()) throw ValidationError("fit_tree needs at least one row");
  if (weights.size() != rows.size()) {
    throw ValidationError("fit_tree: weights must align with rows");
  }
  if (bins < 2) throw ValidationError("histogram_bins must be at least 2");
  if (bins > std::numeric_limits<std::uint16_t>::max()) {
    throw ValidationError("histogram_bins must be below 65536");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ValidationError("row weights must be finite and >= 0");
    }
    total += w;
  }
  if (!(total > 0.0)) throw ValidationError("row weights are all zero");
  for (auto r : rows) {
    if (r >= x.n_rows) throw ValidationError("row index out of range");
  }
}

}  // namespace

std::vector<double> candidate_thresholds(DesignView x, std::size_t feature,
                                         std::span<const std::size_t> rows,
                                         std::span<const double> weights, std::size_t bins,
                                         bool exact) {
  std::vector<std::pair<double, double>> vw;
  vw.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) vw.emplace_back(x.at(rows[k], feature), weights[k]);
  std::sort(vw.begin(), vw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> values, mass;
  for (const auto& [v, w] : vw) {
    if (values.empty() || v != values.back()) {
      values.push_back(v);
      mass.push_back(0.0);
    }
    mass.back() += w;
  }
  std::vector<double> out;
  if (values.size() < 2) return out;
  if (exact || values.size() <= bins) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      out.push_back(midpoint(values[i], values[i + 1]));
    }
    return out;
  }
  double total = std::accumulate(mass.begin(), mass.end(), 0.0);
  if (!(total > 0.0)) {
    std::fill(mass.begin(), mass.end(), 1.0);
    total = static_cast<double>(mass.size());
  }
  std::size_t i = 0;
  double cum = mass[0];
  for (std::size_t k = 1; k < bins; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(bins);
    while (cum < target && i + 1 < values.size()) cum += mass[++i];
    if (i + 1 >= values.size()) break;
    const double t = midpoint(values[i], values[i + 1]);
    if (out.empty() || t > out.back()) out.push_back(t);
  }
  return out;
}

FeatureBins bin_features(DesignView x, std::span<const std::size_t> rows,
                         std::span<const double> weights, std::size_t bins) {
  check_common(x, rows, weights, bins);
  const bool exact = rows.size() <= bins;
  FeatureBins out;
  out.n_rows = x.n_rows;
  out.n_cols = x.n_cols;
  out.thresholds.resize(x.n_cols);
  out.codes.resize(x.n_rows * x.n_cols);
  for (std::size_t f = 0; f < x.n_cols; ++f) {
    auto& t = out.thresholds[f];
    t = candidate_thresholds(x, f, rows, weights, bins, exact);
    // exact mode can exceed the code range only with > 65535 rows
    if (t.size() >= std::numeric_limits<std::uint16_t>::max()) {
      throw ValidationError("too many distinct thresholds for one feature");
    }
    for (std::size_t r = 0; r < x.n_rows; ++r) {
      const auto it = std::lower_bound(t.begin(), t.end(), x.at(r, f));
      out.codes[r * x.n_cols + f] = static_cast<std::uint16_t>(it - t.begin());
    }
  }
  return out;
}

RegressionTree fit_tree(DesignView x, const FeatureBins& bins, std::span<const double> grad,
                        std::span<const double> hess, std::span<const std::size_t> rows,
                        std::span<const double> weights, const TreeParams& params) {
  check_common(x, rows, weights, params.histogram_bins);
  if (grad.size() != x.n_rows || hess.size() != x.n_rows) {
    throw ValidationError("fit_tree: gradient/hessian length must equal row count");
  }
  if (bins.n_rows != x.n_rows || bins.n_cols != x.n_cols) {
    throw ValidationError("fit_tree: bins were built for a different matrix");
  }
  if (params.max_depth < 0) throw ValidationError("max_depth must be non-negative");
  if (params.min_samples_leaf < 1) throw ValidationError("min_samples_leaf must be at least 1");
  return TreeBuilder(x, bins, grad, hess, rows, weights, params).build();
}

RegressionTree fit_tree(DesignView x, std::span<const double> grad, std::span<const double> hess,
                        std::span<const std::size_t> rows, std::span<const double> weights,
                        const TreeParams& params) {
  const FeatureBins bins = bin_features(x, rows, weights, params.histogram_bins);
  return fit_tree(x, bins, grad, hess, rows, weights, params);
}

RegressionTree fit_tree(DesignView x, std::span<const double> targets,
                        std::span<const double> weights, const TreeParams& params) {
  if (targets.size() != x.n_rows || weights.size() != x.n_rows) {
    throw ValidationError("fit_tree: targets and weights must have one entry per row");
  }
  std::vector<double> grad(targets.size()), hess(targets.size(), 1.0);
  for (std::size_t i = 0; i < targets.size(); ++i) grad[i] = -targets[i];
  std::vector<std::size_t> rows(targets.size());
  std::iota(rows.begin(), rows.end(), 0);
  TreeParams p = params;
  p.l2 = 0.0;
  return fit_tree(x, grad, hess, rows, weights, p);
}

}  // namespace stsb
