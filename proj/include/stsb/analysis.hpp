#pragma once

// Error analysis at the edges of the label range: correct/incorrect
// partition, kernel density curves of lemma features and label-span MAE.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stsb/corpus.hpp"
#include "stsb/text.hpp"

namespace stsb {

struct ErrorPartition {
  std::vector<std::size_t> correct;    ///< |pred - label| < threshold
  std::vector<std::size_t> incorrect;  ///< |pred - label| >= threshold
  double threshold = 1.0;
  std::size_t analyzed = 0;
};

/// Indices refer to positions in `preds`/`labels`. With `edge_only`, only
/// labels exactly 0 or `label_max` take part.
ErrorPartition partition_by_error(std::span<const double> preds, std::span<const double> labels,
                                  double threshold = 1.0, bool edge_only = false,
                                  double label_max = 5.0);

struct DensityCurve {
  std::vector<double> grid;
  std::vector<double> density;
  double bandwidth = 0.0;
};

/// 0.9·min(σ, IQR/1.34)·n^(-1/5), falling back to whichever spread is
/// non-zero, then to |x̄|, then to 1; never below 1e-6.
double silverman_bandwidth(std::span<const double> samples);

/// `points` evenly spaced values over [min - 3h, max + 3h].
std::vector<double> kde_grid(std::span<const double> samples, double bandwidth,
                             std::size_t points = 512);

/// Gaussian kernel density. Without a grid the default kde_grid is used;
/// without a bandwidth Silverman's rule is.
DensityCurve kde_density(std::span<const double> samples,
                         std::optional<std::vector<double>> grid = std::nullopt,
                         std::optional<double> bandwidth = std::nullopt);

/// Trapezoidal integral of a curve over its grid.
double curve_integral(const DensityCurve& c);

struct SpanRow {
  std::string span;  ///< e.g. "(0.5,1.5]"
  double lo = 0.0, hi = 0.0;
  std::optional<double> mae;  ///< absent for an empty span
  std::size_t count = 0;
};

/// Spans [0,0.5], (0.5,1.5], ..., (4.5,5] (scaled by label_max/5).
std::vector<SpanRow> label_span_mae(std::span<const double> preds,
                                    std::span<const double> labels, double label_max = 5.0);

/// Index of the span a label falls in.
std::size_t span_index(double label, double label_max = 5.0);

struct EdgeRow {
  std::size_t id = 0;
  double label = 0.0, pred = 0.0;
  bool correct = false;
  double lemma_jaccard = 0.0;
  double lemma_jaccard_no_stopwords = 0.0;
  double meaningful_lemmas_a = 0.0;
  double meaningful_lemmas_b = 0.0;
};

struct FeatureCurves {
  std::string feature;
  std::optional<DensityCurve> correct;
  std::optional<DensityCurve> incorrect;
};

struct EdgeReport {
  std::vector<EdgeRow> rows;           ///< edge-labeled examples, id order
  std::vector<FeatureCurves> curves;   ///< the four features, fixed order
  std::vector<std::pair<double, double>> scatter;  ///< (label, pred), all examples
  std::vector<std::string> warnings;
};

/// Feature names in curve order.
std::span<const std::string_view> edge_feature_names();

EdgeReport edge_error_report(std::span<const LabeledExample> examples,
                             std::span<const double> preds,
                             std::span<const TokenizedSentence> sentences_a,
                             std::span<const TokenizedSentence> sentences_b,
                             double label_max = 5.0, double threshold = 1.0);

void write_span_csv(std::ostream& out, std::span<const SpanRow> rows);
void write_density_csv(std::ostream& out, std::span<const FeatureCurves> curves);
void write_scatter_csv(std::ostream& out, std::span<const std::pair<double, double>> points);

}  // namespace stsb
