#pragma once

#include <string>
#include <vector>

#include "stsb/rng.hpp"
#include "stsb/scores.hpp"

namespace testing_util {

inline std::string fixture(const std::string& name) {
  return std::string(STSB_FIXTURE_DIR) + "/" + name;
}

/// n x d matrix of uniform [0,1) cells with zero targets.
inline stsb::FeatureMatrix random_matrix(stsb::Rng& rng, std::size_t n, std::size_t d) {
  stsb::FeatureMatrix m;
  m.n_rows = n;
  for (std::size_t c = 0; c < d; ++c) m.column_names.push_back("x" + std::to_string(c));
  m.cells.resize(n * d);
  for (auto& v : m.cells) v = rng.uniform();
  m.targets.assign(n, 0.0);
  return m;
}

inline std::vector<double> random_vector(stsb::Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = scale * rng.uniform();
  return v;
}

}  // namespace testing_util
