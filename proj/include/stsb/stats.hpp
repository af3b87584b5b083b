#pragma once

// Correlation metrics, the two-sample Kolmogorov-Smirnov test and
// label-stratified fold assignment.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stsb {

/// Pearson correlation. Throws ValidationError on length mismatch, n < 2 or
/// non-finite input, UndefinedCorrelationError when either side is constant.
double pearson(std::span<const double> x, std::span<const double> y);

/// 1-based ranks; tied values share the average of their positions.
std::vector<double> average_ranks(std::span<const double> values);

bool has_ties(std::span<const double> values);

/// Spearman correlation. Tie-free input uses 1 - 6·Σd²/(n(n²-1)); otherwise
/// the Pearson correlation of average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

/// The rank-difference formula alone. Requires tie-free input.
double spearman_rank_difference(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of average ranks, valid with or without ties.
double spearman_from_ranks(std::span<const double> x, std::span<const double> y);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Survival function of the limiting Kolmogorov distribution,
/// 2·Σ_{k≥1} (-1)^{k-1} exp(-2k²λ²).
double kolmogorov_survival(double lambda);

/// Two-sample KS test with the asymptotic p-value at
/// λ = D·sqrt(mn/(m+n)). Throws ValidationError for an empty sample.
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y);

struct StratifiedSplit {
  std::size_t n_bins = 0;
  std::size_t n_folds = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> bin;   ///< per example
  std::vector<std::size_t> fold;  ///< per example

  std::vector<std::size_t> fold_members(std::size_t f) const;
};

/// Bins labels into `n_bins` equal-width bins over [0, label_max], shuffles
/// each bin with `seed` and deals members round-robin over the folds. The
/// dealing position carries over from one bin to the next, so per-bin and
/// overall fold sizes both differ by at most one.
StratifiedSplit stratified_folds(std::span<const double> labels, std::size_t n_bins,
                                 std::size_t n_folds, std::uint64_t seed,
                                 double label_max = 5.0);

/// Largest KS statistic between the label sets of any two folds.
double max_pairwise_fold_ks(std::span<const double> labels, const StratifiedSplit& split);

}  // namespace stsb
