#pragma once

// Gradient-boosted regression trees with optional gradient-based one-side
// sampling (GOSS).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stsb/scores.hpp"
#include "stsb/tree.hpp"

namespace stsb {

enum class Loss { squared, cross_entropy };

std::string_view to_string(Loss loss);
Loss parse_loss(std::string_view name);

struct GbdtConfig {
  std::size_t n_trees = 100;
  int max_depth = 3;
  double shrinkage = 0.1;
  std::size_t min_samples_leaf = 1;
  std::size_t histogram_bins = 64;
  /// GOSS: share of rows kept by largest |gradient| (1 disables sampling).
  double goss_top_fraction = 1.0;
  /// GOSS: share of rows sampled uniformly from the remainder.
  double goss_other_fraction = 0.0;
  std::uint64_t seed = 0;
  Loss loss = Loss::squared;

  /// Throws ValidationError when a field is out of range.
  void validate() const;
  bool operator==(const GbdtConfig&) const = default;
};

struct GossSample {
  std::vector<std::size_t> rows;  ///< ascending
  std::vector<double> weights;    ///< aligned with rows
};

/// Keeps the ceil(a·n) rows with the largest |gradient| (ties: lower index
/// first) at weight 1, then draws ceil(b·n) of the rest uniformly without
/// replacement at weight (1-a)/b. a = 1 returns every row at weight 1.
GossSample goss_sample(std::span<const double> gradients, double a, double b,
                       std::uint64_t seed);

struct TreeEnsemble {
  double base_prediction = 0.0;
  std::vector<RegressionTree> trees;
  double shrinkage = 1.0;
  Loss loss = Loss::squared;
  GbdtConfig config;

  /// Additive score before the link function.
  double margin(std::span<const double> row) const;
  /// Identity link for squared loss, logistic for cross-entropy (in (0,1)).
  double predict(std::span<const double> row) const;
  std::vector<double> predict(DesignView x) const;
  bool operator==(const TreeEnsemble&) const = default;
};

/// Logistic function with the argument clamped to [-36, 36], so the result
/// stays strictly inside (0,1) in double precision.
double logistic(double margin);

/// Per-iteration training diagnostics.
struct GbdtTrace {
  std::vector<double> train_mse;  ///< after each tree, on the training rows
};

/// Boosts `config.n_trees` trees on `m`. Squared loss starts from the target
/// mean and fits residuals; cross-entropy starts from the log-odds of the
/// clipped mean and takes Newton steps with gradient p-y and hessian
/// p(1-p)+1e-12 (leaf regulariser 1e-6).
///
/// Throws ValidationError for n < 2, non-finite cells, or cross-entropy
/// targets outside [0,1].
TreeEnsemble train_gbdt(const FeatureMatrix& m, const GbdtConfig& config,
                        GbdtTrace* trace = nullptr);

}  // namespace stsb
