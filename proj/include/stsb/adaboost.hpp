#pragma once

// AdaBoost.R2 (Drucker, 1997) over weighted regression trees.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "stsb/scores.hpp"
#include "stsb/tree.hpp"

namespace stsb {

enum class AdaLoss { linear, square, exponential };

std::string_view to_string(AdaLoss loss);
AdaLoss parse_ada_loss(std::string_view name);

struct AdaBoostConfig {
  std::size_t rounds = 50;
  AdaLoss loss = AdaLoss::linear;
  int max_depth = 3;
  std::size_t min_samples_leaf = 1;
  std::size_t histogram_bins = 64;
  /// Recorded for provenance; fitting uses weights, not resampling, and is
  /// deterministic without it.
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const AdaBoostConfig&) const = default;
};

struct AdaBoostModel {
  std::vector<RegressionTree> learners;
  /// log(1/β_t) per learner. A learner that fit the training data exactly
  /// gets the sum of all earlier weights plus one, which makes it the
  /// weighted median outright (the finite stand-in for log(1/0)).
  std::vector<double> learner_weights;
  AdaLoss loss_kind = AdaLoss::linear;
  AdaBoostConfig config;

  /// Weighted median of the learner outputs.
  double predict(std::span<const double> row) const;
  std::vector<double> predict(DesignView x) const;
  bool operator==(const AdaBoostModel&) const = default;
};

struct AdaRound {
  double average_loss = 0.0;  ///< L̄_t
  double beta = 0.0;          ///< L̄_t / (1 - L̄_t)
  double weight_sum = 0.0;    ///< Σ sample weights after the update
  bool kept = false;
  std::vector<double> weights;  ///< sample distribution after the update
};

/// Uniform start; each round fits a weighted tree, normalises per-row loss
/// by the round's maximum error, and multiplies weights by β^(1-L_i) before
/// renormalising. Stops after a round with L̄ >= 0.5 (learner dropped unless
/// it is the only one) or L̄ = 0 (learner kept).
AdaBoostModel train_adaboost_r2(const FeatureMatrix& m, const AdaBoostConfig& config,
                                std::vector<AdaRound>* trace = nullptr);

}  // namespace stsb
