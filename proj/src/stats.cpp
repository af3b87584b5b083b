#include "stsb/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "stsb/errors.hpp"
#include "stsb/rng.hpp"

namespace stsb {
namespace {

void check_paired(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ValidationError("paired sample lengths differ: " + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()));
  }
  if (x.size() < 2) throw ValidationError("paired sample needs at least 2 observations");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw ValidationError("non-finite value at position " + std::to_string(i));
    }
  }
}

}  // namespace

// Two-pass with extended-precision accumulators.
double pearson(std::span<const double> x, std::span<const double> y) {
  check_paired(x, y);
  const std::size_t n = x.size();
  long double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const long double mx = sx / n, my = sy / n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) {
    throw UndefinedCorrelationError("correlation undefined: a variable has zero variance");
  }
  const long double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
  return static_cast<double>(std::clamp(r, -1.0L, 1.0L));
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share rank ((i+1)+(j+1))/2
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

bool has_ties(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

double spearman_rank_difference(std::span<const double> x, std::span<const double> y) {
  check_paired(x, y);
  if (has_ties(x) || has_ties(y)) {
    throw ValidationError("rank-difference formula requires tie-free samples");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  // Ranks are integers here, so the sum of squared differences is exact.
  std::uint64_t sum_d2 = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const auto d = static_cast<std::int64_t>(rx[i]) - static_cast<std::int64_t>(ry[i]);
    sum_d2 += static_cast<std::uint64_t>(d * d);
  }
  const long double n = static_cast<long double>(rx.size());
  return static_cast<double>(1.0L - 6.0L * static_cast<long double>(sum_d2) / (n * (n * n - 1)));
}

double spearman_from_ranks(std::span<const double> x, std::span<const double> y) {
  check_paired(x, y);
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_paired(x, y);
  if (!has_ties(x) && !has_ties(y)) return spearman_rank_difference(x, y);
  return spearman_from_ranks(x, y);
}

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  constexpr double kEps = 1e-18;
  if (lambda < 1.18) {
    // Small λ: the alternating series converges slowly, so evaluate the
    // equivalent theta-function form of the CDF and complement it.
    const double pi = std::numbers::pi;
    const double a = pi * pi / (8.0 * lambda * lambda);
    long double cdf = 0.0L;
    for (int k = 1; k < 200; ++k) {
      const double odd = 2.0 * k - 1.0;
      const long double term = std::exp(-static_cast<long double>(odd * odd * a));
      cdf += term;
      if (term < kEps) break;
    }
    cdf *= std::sqrt(2.0L * pi) / lambda;
    return static_cast<double>(std::clamp(1.0L - cdf, 0.0L, 1.0L));
  }
  long double sum = 0.0L;
  for (int k = 1; k < 200; ++k) {
    const long double term = std::exp(-2.0L * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < kEps) break;
  }
  return static_cast<double>(std::clamp(2.0L * sum, 0.0L, 1.0L));
}

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw ValidationError("KS test needs two non-empty samples");
  for (double v : x) {
    if (!std::isfinite(v)) throw ValidationError("non-finite value in KS sample");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw ValidationError("non-finite value in KS sample");
  }
  std::vector<double> a(x.begin(), x.end()), b(y.begin(), y.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::uint64_t m = a.size(), n = b.size();
  // |F_a - F_b| at each pooled point, scaled by m·n to stay in integers
  std::uint64_t i = 0, j = 0, best = 0;
  while (i < m && j < n) {
    const double t = std::min(a[i], b[j]);
    while (i < m && a[i] == t) ++i;
    while (j < n && b[j] == t) ++j;
    const std::uint64_t lhs = i * n, rhs = j * m;
    best = std::max(best, lhs > rhs ? lhs - rhs : rhs - lhs);
  }
  KsResult r;
  r.statistic = static_cast<double>(best) / static_cast<double>(m * n);
  const double en = static_cast<double>(m) * static_cast<double>(n) / static_cast<double>(m + n);
  r.p_value = kolmogorov_survival(r.statistic * std::sqrt(en));
  r.p_value = std::max(r.p_value, std::numeric_limits<double>::denorm_min());
  return r;
}

std::vector<std::size_t> StratifiedSplit::fold_members(std::size_t f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold.size(); ++i) {
    if (fold[i] == f) out.push_back(i);
  }
  return out;
}

StratifiedSplit stratified_folds(std::span<const double> labels, std::size_t n_bins,
                                 std::size_t n_folds, std::uint64_t seed, double label_max) {
  if (n_bins < 1) throw ValidationError("n_bins must be at least 1");
  if (n_folds < 2) throw ValidationError("n_folds must be at least 2");
  if (n_folds > labels.size()) {
    throw ValidationError("n_folds (" + std::to_string(n_folds) + ") exceeds example count (" +
                          std::to_string(labels.size()) + ")");
  }
  StratifiedSplit split;
  split.n_bins = n_bins;
  split.n_folds = n_folds;
  split.seed = seed;
  split.bin.resize(labels.size());
  split.fold.resize(labels.size());

  std::vector<std::vector<std::size_t>> members(n_bins);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double v = labels[i];
    if (!std::isfinite(v) || v < 0.0 || v > label_max) {
      throw ValidationError("label " + std::to_string(v) + " outside [0," +
                            std::to_string(label_max) + "]");
    }
    auto b = static_cast<std::size_t>(v / label_max * static_cast<double>(n_bins));
    b = std::min(b, n_bins - 1);
    split.bin[i] = b;
    members[b].push_back(i);
  }
  Rng rng(seed);
  std::size_t next_fold = 0;
  for (auto& bin : members) {
    rng.shuffle(bin);
    for (std::size_t idx : bin) {
      split.fold[idx] = next_fold;
      next_fold = (next_fold + 1) % n_folds;
    }
  }
  return split;
}

double max_pairwise_fold_ks(std::span<const double> labels, const StratifiedSplit& split) {
  std::vector<std::vector<double>> folds(split.n_folds);
  for (std::size_t i = 0; i < labels.size(); ++i) folds[split.fold[i]].push_back(labels[i]);
  double worst = 0.0;
  for (std::size_t a = 0; a < folds.size(); ++a) {
    for (std::size_t b = a + 1; b < folds.size(); ++b) {
      worst = std::max(worst, ks_two_sample(folds[a], folds[b]).statistic);
    }
  }
  return worst;
}

}  // namespace stsb
