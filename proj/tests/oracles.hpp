#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <vector>

#include "stsb/scores.hpp"
#include "stsb/tree.hpp"

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

inline Big big_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  Big mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  Big sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Big dx = Big(x[i]) - mx, dy = Big(y[i]) - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / (sqrt(sxx) * sqrt(syy));
}

// Ranks by counting, valid for tie-free input only.
inline std::vector<double> naive_ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    r[i] = 1.0 + std::count_if(v.begin(), v.end(), [&](double w) { return w < v[i]; });
  }
  return r;
}

inline double sse(const std::vector<double>& y, const std::vector<std::size_t>& rows) {
  if (rows.empty()) return 0.0;
  long double mean = 0;
  for (auto r : rows) mean += y[r];
  mean /= rows.size();
  long double s = 0;
  for (auto r : rows) s += (y[r] - mean) * (y[r] - mean);
  return static_cast<double>(s);
}

// Greedy tree where every node tries every (feature, midpoint) pair and
// scores children by directly recomputed squared error. Returns the
// training SSE of the resulting tree.
inline double tree_sse_oracle(const stsb::FeatureMatrix& m, const std::vector<std::size_t>& rows,
                              int depth, std::size_t min_leaf) {
  const double parent = sse(m.targets, rows);
  if (depth == 0 || rows.size() < 2 * min_leaf) return parent;
  double best = parent;
  std::vector<std::size_t> best_l, best_r;
  for (std::size_t f = 0; f < m.n_cols(); ++f) {
    std::vector<double> vals;
    for (auto r : rows) vals.push_back(m.at(r, f));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
      const double t = vals[k] + (vals[k + 1] - vals[k]) / 2;
      std::vector<std::size_t> l, r;
      for (auto row : rows) (m.at(row, f) <= t ? l : r).push_back(row);
      if (l.size() < min_leaf || r.size() < min_leaf) continue;
      const double s = sse(m.targets, l) + sse(m.targets, r);
      if (s < best - 1e-12 * std::max(1.0, parent)) {
        best = s;
        best_l = l;
        best_r = r;
      }
    }
  }
  if (best_l.empty()) return parent;
  return tree_sse_oracle(m, best_l, depth - 1, min_leaf) +
         tree_sse_oracle(m, best_r, depth - 1, min_leaf);
}

inline double tree_sse(const stsb::RegressionTree& t, const stsb::FeatureMatrix& m) {
  long double s = 0;
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    const double e = t.predict(m.row(r)) - m.targets[r];
    s += static_cast<long double>(e) * e;
  }
  return static_cast<double>(s);
}

}  // namespace oracle
