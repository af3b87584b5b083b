#pragma once

// Non-transformer baselines over averaged word vectors: unsupervised cosine
// similarity, least squares and a linear epsilon-insensitive SVR.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "stsb/text.hpp"

namespace stsb {

class WordVectorTable {
 public:
  WordVectorTable() = default;
  explicit WordVectorTable(std::size_t dimension) : dim_(dimension) {}

  /// Throws ValidationError on a wrong length or a duplicate token.
  void add(std::string token, std::vector<double> vec);
  const std::vector<double>* find(const std::string& token) const;

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return table_.size(); }
  bool empty() const { return table_.empty(); }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> table_;
};

/// `token v1 ... vd` per line; a leading `count dim` line is accepted.
/// Throws ParseError with the line number on ragged or non-numeric rows.
WordVectorTable read_word_vectors(std::istream& in);

struct SentenceEmbedding {
  std::vector<double> vec;
  bool out_of_vocabulary = false;  ///< no token was found; vec is zero
  std::size_t known_tokens = 0;
};

SentenceEmbedding embed_sentence(const TokenizedSentence& s, const WordVectorTable& table);

/// dot(a,b)/(|a||b|); 0 when either vector is zero.
double cosine_baseline(std::span<const double> a, std::span<const double> b);

/// [a; b; |a-b|; a*b].
std::vector<double> pair_design_row(std::span<const double> a, std::span<const double> b);

struct LinearModel {
  double intercept = 0.0;
  std::vector<double> coef;
  bool ridge = false;       ///< the ridge fallback was used
  std::string warning;      ///< non-empty when ridge is true

  double predict(std::span<const double> row) const;
};

/// Row-major n x d design plus targets. Solved by column-pivoted QR with an
/// unpenalized intercept. When n <= d or the design is rank deficient the
/// system is augmented with sqrt(ridge) * I and a warning is recorded.
LinearModel fit_linear_regression(std::span<const double> x, std::size_t n, std::size_t d,
                                  std::span<const double> y, double ridge = 1e-8);

struct SvrConfig {
  double epsilon = 0.1;
  double c = 1.0;
  std::size_t epochs = 50;
  std::uint64_t seed = 0;
};

/// 0.5·|w|² + C·mean(max(0, |y - w·x - b| - ε)).
double svr_objective(const LinearModel& m, std::span<const double> x, std::size_t n,
                     std::size_t d, std::span<const double> y, double epsilon, double c);

/// Linear epsilon-insensitive regression by stochastic subgradient descent
/// over a seeded shuffle each epoch. The model kept is the best epoch-average
/// iterate seen so far, so `trace` (objective after each epoch) never rises.
LinearModel fit_linear_svr(std::span<const double> x, std::size_t n, std::size_t d,
                           std::span<const double> y, const SvrConfig& config,
                           std::vector<double>* trace = nullptr);

}  // namespace stsb
