#pragma once

// CART-style regression trees fit to first/second order statistics.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stsb/scores.hpp"

namespace stsb {

/// Non-owning row-major view of a design matrix.
struct DesignView {
  std::span<const double> cells;
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;

  DesignView() = default;
  DesignView(std::span<const double> c, std::size_t rows, std::size_t cols)
      : cells(c), n_rows(rows), n_cols(cols) {}
  DesignView(const FeatureMatrix& m)  // NOLINT: implicit by intent
      : cells(m.cells), n_rows(m.n_rows), n_cols(m.n_cols()) {}

  double at(std::size_t r, std::size_t c) const { return cells[r * n_cols + c]; }
  std::span<const double> row(std::size_t r) const { return cells.subspan(r * n_cols, n_cols); }
};

struct TreeNode {
  int feature = -1;  ///< -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  ///< leaf output

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

/// Binary tree stored in pre-order; node 0 is the root. Rows with
/// x[feature] <= threshold go left.
class RegressionTree {
 public:
  RegressionTree() = default;
  explicit RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  double predict(std::span<const double> row) const;
  std::size_t leaf_of(std::span<const double> row) const;
  int depth() const;
  std::size_t leaf_count() const;
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  bool operator==(const RegressionTree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
};

struct TreeParams {
  int max_depth = 3;
  std::size_t min_samples_leaf = 1;
  /// Exact threshold enumeration when the fitted row count is at most this;
  /// weighted-quantile candidate thresholds otherwise.
  std::size_t histogram_bins = 64;
  /// Added to the hessian sum in gains and leaf values.
  double l2 = 0.0;
};

/// Per-feature candidate thresholds and, for every row of the design, the
/// index of the first threshold >= its value. A row goes left of threshold
/// j exactly when its code is <= j.
struct FeatureBins {
  std::vector<std::vector<double>> thresholds;
  std::vector<std::uint16_t> codes;  ///< row-major, n_rows x n_cols
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;

  std::uint16_t code(std::size_t r, std::size_t c) const { return codes[r * n_cols + c]; }
};

/// Builds thresholds from `rows`/`weights` (exact enumeration when
/// rows.size() <= bins) and codes every row of `x`.
FeatureBins bin_features(DesignView x, std::span<const std::size_t> rows,
                         std::span<const double> weights, std::size_t bins);

/// Greedy tree on gradient/hessian pairs. Split gain is
/// G_L²/(H_L+λ) + G_R²/(H_R+λ) - G²/(H+λ) and leaves output -G/(H+λ), where
/// sums are weighted. Only `rows` take part; `weights[k]` belongs to
/// `rows[k]`. `grad` and `hess` are indexed by absolute row.
///
/// Ties between equal gains go to the lower feature index, then the lower
/// threshold. Throws ValidationError on empty rows or invalid weights.
RegressionTree fit_tree(DesignView x, std::span<const double> grad, std::span<const double> hess,
                        std::span<const std::size_t> rows, std::span<const double> weights,
                        const TreeParams& params);

/// As above with thresholds fixed in advance (boosting bins once per run).
RegressionTree fit_tree(DesignView x, const FeatureBins& bins, std::span<const double> grad,
                        std::span<const double> hess, std::span<const std::size_t> rows,
                        std::span<const double> weights, const TreeParams& params);

/// Weighted least-squares tree on all rows: leaves hold the weighted mean
/// target and splits maximise weighted variance reduction.
RegressionTree fit_tree(DesignView x, std::span<const double> targets,
                        std::span<const double> weights, const TreeParams& params);

/// Candidate split thresholds for one feature over the given rows: every
/// midpoint between adjacent distinct values when that gives at most
/// `bins - 1` candidates (or when exact), else midpoints at the weighted
/// quantiles k/bins.
std::vector<double> candidate_thresholds(DesignView x, std::size_t feature,
                                         std::span<const std::size_t> rows,
                                         std::span<const double> weights, std::size_t bins,
                                         bool exact);

}  // namespace stsb
