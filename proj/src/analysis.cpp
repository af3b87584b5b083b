#include "stsb/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

#include "stsb/csv.hpp"
#include "stsb/errors.hpp"

namespace stsb {

namespace {

void check_aligned(std::span<const double> preds, std::span<const double> labels) {
  if (preds.size() != labels.size()) {
    throw ValidationError("predictions (" + std::to_string(preds.size()) + ") and labels (" +
                          std::to_string(labels.size()) + ") differ in length");
  }
}

// Linear-interpolated quantile (type 7).
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

constexpr std::array<std::string_view, 4> kEdgeFeatures = {
    "lemma_jaccard", "lemma_jaccard_no_stopwords", "meaningful_lemmas_a",
    "meaningful_lemmas_b"};

}  // namespace

ErrorPartition partition_by_error(std::span<const double> preds, std::span<const double> labels,
                                  double threshold, bool edge_only, double label_max) {
  check_aligned(preds, labels);
  ErrorPartition p;
  p.threshold = threshold;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (edge_only && labels[i] != 0.0 && labels[i] != label_max) continue;
    ++p.analyzed;
    (std::abs(preds[i] - labels[i]) < threshold ? p.correct : p.incorrect).push_back(i);
  }
  return p;
}

double silverman_bandwidth(std::span<const double> samples) {
  if (samples.empty()) throw ValidationError("bandwidth of an empty sample");
  const std::size_t n = samples.size();
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  double sd = 0.0;
  if (n > 1) {
    long double mean = 0.0L;
    for (double v : sorted) mean += v;
    mean /= static_cast<long double>(n);
    long double ss = 0.0L;
    for (double v : sorted) ss += (v - mean) * (v - mean);
    sd = static_cast<double>(std::sqrt(ss / static_cast<long double>(n - 1)));
  }
  const double iqr = (quantile(sorted, 0.75) - quantile(sorted, 0.25)) / 1.34;
  double spread = std::min(sd, iqr);
  if (!(spread > 0.0)) spread = sd > 0.0 ? sd : iqr;
  if (!(spread > 0.0)) spread = std::abs(sorted.front());
  if (!(spread > 0.0)) spread = 1.0;
  const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
  return std::max(h, 1e-6);
}

std::vector<double> kde_grid(std::span<const double> samples, double bandwidth,
                             std::size_t points) {
  if (samples.empty()) throw ValidationError("grid for an empty sample");
  if (points < 2) throw ValidationError("density grid needs at least 2 points");
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *mn - 3.0 * bandwidth;
  const double hi = *mx + 3.0 * bandwidth;
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

DensityCurve kde_density(std::span<const double> samples, std::optional<std::vector<double>> grid,
                         std::optional<double> bandwidth) {
  if (samples.empty()) throw ValidationError("density of an empty sample");
  for (double v : samples) {
    if (!std::isfinite(v)) throw ValidationError("non-finite sample in density estimate");
  }
  DensityCurve c;
  if (bandwidth) {
    if (!(*bandwidth > 0.0)) throw ValidationError("bandwidth must be > 0");
    c.bandwidth = *bandwidth;
  } else {
    c.bandwidth = silverman_bandwidth(samples);
  }
  c.grid = grid ? std::move(*grid) : kde_grid(samples, c.bandwidth);
  c.density.resize(c.grid.size());
  const double norm =
      1.0 / (static_cast<double>(samples.size()) * c.bandwidth * std::sqrt(2.0 * std::numbers::pi));
  for (std::size_t g = 0; g < c.grid.size(); ++g) {
    double s = 0.0;
    for (double v : samples) {
      const double z = (c.grid[g] - v) / c.bandwidth;
      s += std::exp(-0.5 * z * z);
    }
    c.density[g] = s * norm;
  }
  return c;
}

double curve_integral(const DensityCurve& c) {
  double total = 0.0;
  for (std::size_t i = 1; i < c.grid.size(); ++i) {
    total += 0.5 * (c.density[i] + c.density[i - 1]) * (c.grid[i] - c.grid[i - 1]);
  }
  return total;
}

std::size_t span_index(double label, double label_max) {
  constexpr std::array<double, 5> upper = {0.5, 1.5, 2.5, 3.5, 4.5};
  const double scale = label_max / 5.0;
  for (std::size_t k = 0; k < upper.size(); ++k) {
    if (label <= upper[k] * scale) return k;
  }
  return 5;
}

std::vector<SpanRow> label_span_mae(std::span<const double> preds,
                                    std::span<const double> labels, double label_max) {
  check_aligned(preds, labels);
  constexpr std::array<const char*, 6> names = {"[0,0.5]",   "(0.5,1.5]", "(1.5,2.5]",
                                                "(2.5,3.5]", "(3.5,4.5]", "(4.5,5]"};
  constexpr std::array<double, 7> edges = {0.0, 0.5, 1.5, 2.5, 3.5, 4.5, 5.0};
  const double scale = label_max / 5.0;
  std::vector<SpanRow> rows(6);
  std::vector<long double> sums(6, 0.0L);
  for (std::size_t k = 0; k < 6; ++k) {
    rows[k].span = names[k];
    rows[k].lo = edges[k] * scale;
    rows[k].hi = edges[k + 1] * scale;
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::size_t k = span_index(labels[i], label_max);
    sums[k] += std::abs(preds[i] - labels[i]);
    ++rows[k].count;
  }
  for (std::size_t k = 0; k < 6; ++k) {
    if (rows[k].count) rows[k].mae = static_cast<double>(sums[k] / rows[k].count);
  }
  return rows;
}

std::span<const std::string_view> edge_feature_names() { return kEdgeFeatures; }

EdgeReport edge_error_report(std::span<const LabeledExample> examples,
                             std::span<const double> preds,
                             std::span<const TokenizedSentence> sentences_a,
                             std::span<const TokenizedSentence> sentences_b, double label_max,
                             double threshold) {
  if (preds.size() != examples.size() || sentences_a.size() != examples.size() ||
      sentences_b.size() != examples.size()) {
    throw ValidationError("edge report inputs differ in length");
  }
  std::vector<double> labels(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) labels[i] = examples[i].label;
  const auto part = partition_by_error(preds, labels, threshold, true, label_max);

  EdgeReport rep;
  std::vector<bool> is_correct(examples.size(), false);
  for (auto i : part.correct) is_correct[i] = true;
  std::vector<std::size_t> edge;
  edge.reserve(part.analyzed);
  edge.insert(edge.end(), part.correct.begin(), part.correct.end());
  edge.insert(edge.end(), part.incorrect.begin(), part.incorrect.end());
  std::sort(edge.begin(), edge.end());
  for (auto i : edge) {
    EdgeRow r;
    r.id = examples[i].id;
    r.label = labels[i];
    r.pred = preds[i];
    r.correct = is_correct[i];
    r.lemma_jaccard = lemma_jaccard(sentences_a[i], sentences_b[i], false);
    r.lemma_jaccard_no_stopwords = lemma_jaccard(sentences_a[i], sentences_b[i], true);
    r.meaningful_lemmas_a = meaningful_lemma_fraction(sentences_a[i]);
    r.meaningful_lemmas_b = meaningful_lemma_fraction(sentences_b[i]);
    rep.rows.push_back(r);
  }
  for (std::size_t i = 0; i < examples.size(); ++i) rep.scatter.emplace_back(labels[i], preds[i]);

  if (part.correct.empty()) rep.warnings.push_back("no correctly predicted edge examples");
  if (part.incorrect.empty()) rep.warnings.push_back("no incorrectly predicted edge examples");

  for (std::size_t f = 0; f < kEdgeFeatures.size(); ++f) {
    auto value = [f](const EdgeRow& r) {
      switch (f) {
        case 0: return r.lemma_jaccard;
        case 1: return r.lemma_jaccard_no_stopwords;
        case 2: return r.meaningful_lemmas_a;
        default: return r.meaningful_lemmas_b;
      }
    };
    std::vector<double> good, bad;
    for (const auto& r : rep.rows) (r.correct ? good : bad).push_back(value(r));
    FeatureCurves fc;
    fc.feature = kEdgeFeatures[f];
    // Both sides share one grid wide enough for the larger bandwidth.
    double h = 0.0;
    std::vector<double> all;
    if (!good.empty()) h = std::max(h, silverman_bandwidth(good));
    if (!bad.empty()) h = std::max(h, silverman_bandwidth(bad));
    all.insert(all.end(), good.begin(), good.end());
    all.insert(all.end(), bad.begin(), bad.end());
    if (!all.empty()) {
      const auto grid = kde_grid(all, h);
      if (!good.empty()) fc.correct = kde_density(good, grid);
      if (!bad.empty()) fc.incorrect = kde_density(bad, grid);
    }
    rep.curves.push_back(std::move(fc));
  }
  return rep;
}

void write_span_csv(std::ostream& out, std::span<const SpanRow> rows) {
  out << "span,mae,count\n";
  for (const auto& r : rows) {
    out << r.span << ',' << (r.mae ? csv::format_double(*r.mae) : std::string()) << ','
        << r.count << '\n';
  }
}

void write_density_csv(std::ostream& out, std::span<const FeatureCurves> curves) {
  out << "feature,side,grid,density\n";
  auto emit = [&out](const std::string& feature, const char* side, const DensityCurve& c) {
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      out << feature << ',' << side << ',' << csv::format_double(c.grid[i]) << ','
          << csv::format_double(c.density[i]) << '\n';
    }
  };
  for (const auto& fc : curves) {
    if (fc.correct) emit(fc.feature, "correct", *fc.correct);
    if (fc.incorrect) emit(fc.feature, "incorrect", *fc.incorrect);
  }
}

void write_scatter_csv(std::ostream& out, std::span<const std::pair<double, double>> points) {
  out << "label,pred\n";
  for (const auto& [l, p] : points) {
    out << csv::format_double(l) << ',' << csv::format_double(p) << '\n';
  }
}

}  // namespace stsb
