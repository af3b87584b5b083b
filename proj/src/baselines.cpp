#include "stsb/baselines.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>

#include "stsb/csv.hpp"
#include "stsb/errors.hpp"
#include "stsb/rng.hpp"

namespace stsb {

void WordVectorTable::add(std::string token, std::vector<double> vec) {
  if (dim_ == 0) dim_ = vec.size();
  if (vec.size() != dim_ || dim_ == 0) {
    throw ValidationError("word vector for '" + token + "' has length " +
                          std::to_string(vec.size()) + ", expected " + std::to_string(dim_));
  }
  if (!table_.emplace(token, std::move(vec)).second) {
    throw ValidationError("duplicate word vector for '" + token + "'");
  }
}

const std::vector<double>* WordVectorTable::find(const std::string& token) const {
  auto it = table_.find(token);
  return it == table_.end() ? nullptr : &it->second;
}

WordVectorTable read_word_vectors(std::istream& in) {
  WordVectorTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    std::vector<std::string> rest;
    for (std::string f; fields >> f;) rest.push_back(std::move(f));
    if (line_no == 1 && rest.size() == 1) {
      // "count dim" header
      const double dim = csv::parse_double(rest[0], line_no);
      csv::parse_double(token, line_no);
      if (dim < 1.0) throw ParseError("header dimension must be positive", line_no);
      table = WordVectorTable(static_cast<std::size_t>(dim));
      continue;
    }
    std::vector<double> vec(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i) vec[i] = csv::parse_double(rest[i], line_no);
    if (vec.empty()) throw ParseError("word vector line without components", line_no);
    if (table.dimension() != 0 && vec.size() != table.dimension()) {
      throw ParseError("vector has " + std::to_string(vec.size()) + " components, expected " +
                           std::to_string(table.dimension()),
                       line_no);
    }
    try {
      table.add(std::move(token), std::move(vec));
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return table;
}

SentenceEmbedding embed_sentence(const TokenizedSentence& s, const WordVectorTable& table) {
  if (table.empty()) throw ValidationError("word vector table is empty");
  SentenceEmbedding out;
  out.vec.assign(table.dimension(), 0.0);
  for (const auto& tok : s.tokens) {
    const auto* v = table.find(tok);
    if (!v) continue;
    ++out.known_tokens;
    for (std::size_t i = 0; i < v->size(); ++i) out.vec[i] += (*v)[i];
  }
  if (out.known_tokens == 0) {
    out.out_of_vocabulary = true;
    return out;
  }
  for (auto& x : out.vec) x /= static_cast<double>(out.known_tokens);
  return out;
}

double cosine_baseline(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("cosine of vectors with different lengths");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

std::vector<double> pair_design_row(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("pair design of vectors with different lengths");
  const std::size_t d = a.size();
  std::vector<double> row(4 * d);
  for (std::size_t i = 0; i < d; ++i) {
    row[i] = a[i];
    row[d + i] = b[i];
    row[2 * d + i] = std::abs(a[i] - b[i]);
    row[3 * d + i] = a[i] * b[i];
  }
  return row;
}

double LinearModel::predict(std::span<const double> row) const {
  if (row.size() != coef.size()) throw ValidationError("row length does not match model");
  double s = intercept;
  for (std::size_t i = 0; i < coef.size(); ++i) s += coef[i] * row[i];
  return s;
}

namespace {

void check_design(std::span<const double> x, std::size_t n, std::size_t d,
                  std::span<const double> y) {
  if (n == 0) throw ValidationError("empty design matrix");
  if (x.size() != n * d) throw ValidationError("design size does not match n x d");
  if (y.size() != n) throw ValidationError("target count does not match design rows");
  for (double v : x) {
    if (!std::isfinite(v)) throw ValidationError("non-finite design cell");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw ValidationError("non-finite target");
  }
}

}  // namespace

LinearModel fit_linear_regression(std::span<const double> x, std::size_t n, std::size_t d,
                                  std::span<const double> y, double ridge) {
  check_design(x, n, d, y);
  using Mat = Eigen::MatrixXd;
  const std::size_t p = d + 1;
  Mat a(n, p);
  Eigen::VectorXd b(n);
  for (std::size_t r = 0; r < n; ++r) {
    a(r, 0) = 1.0;
    for (std::size_t c = 0; c < d; ++c) a(r, c + 1) = x[r * d + c];
    b(r) = y[r];
  }

  LinearModel m;
  Eigen::VectorXd beta;
  bool full_rank = n > d;
  if (full_rank) {
    Eigen::ColPivHouseholderQR<Mat> qr(a);
    full_rank = qr.rank() == static_cast<Eigen::Index>(p);
    if (full_rank) beta = qr.solve(b);
  }
  if (!full_rank) {
    Mat aug = Mat::Zero(n + d, p);
    aug.topRows(n) = a;
    const double s = std::sqrt(ridge);
    for (std::size_t c = 0; c < d; ++c) aug(n + c, c + 1) = s;
    Eigen::VectorXd baug = Eigen::VectorXd::Zero(n + d);
    baug.head(n) = b;
    beta = Eigen::ColPivHouseholderQR<Mat>(aug).solve(baug);
    m.ridge = true;
    m.warning = "design is rank deficient (n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                "); solved with ridge " + csv::format_double(ridge);
  }
  m.intercept = beta(0);
  m.coef.assign(beta.data() + 1, beta.data() + p);
  return m;
}

double svr_objective(const LinearModel& m, std::span<const double> x, std::size_t n,
                     std::size_t d, std::span<const double> y, double epsilon, double c) {
  long double reg = 0.0L, loss = 0.0L;
  for (double w : m.coef) reg += static_cast<long double>(w) * w;
  for (std::size_t r = 0; r < n; ++r) {
    const double resid = y[r] - m.predict(x.subspan(r * d, d));
    loss += std::max(0.0, std::abs(resid) - epsilon);
  }
  return static_cast<double>(0.5L * reg + c * loss / static_cast<long double>(n));
}

LinearModel fit_linear_svr(std::span<const double> x, std::size_t n, std::size_t d,
                           std::span<const double> y, const SvrConfig& config,
                           std::vector<double>* trace) {
  check_design(x, n, d, y);
  if (!(config.epsilon > 0.0)) throw ValidationError("SVR epsilon must be > 0");
  if (!(config.c > 0.0)) throw ValidationError("SVR C must be > 0");
  if (config.epochs == 0) throw ValidationError("SVR needs at least one epoch");

  // Step sizes scale with the largest squared row norm so the first updates
  // cannot overshoot.
  double r2 = 1.0;
  for (std::size_t r = 0; r < n; ++r) {
    double s = 1.0;
    for (std::size_t c = 0; c < d; ++c) s += x[r * d + c] * x[r * d + c];
    r2 = std::max(r2, s);
  }
  const double eta0 = 1.0 / (1.0 + config.c * r2);

  LinearModel cur;
  cur.coef.assign(d, 0.0);
  LinearModel best = cur;
  double best_obj = svr_objective(best, x, n, d, y, config.epsilon, config.c);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(config.seed);
  std::vector<double> avg(d);
  std::size_t t = 0;
  if (trace) trace->clear();
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    std::fill(avg.begin(), avg.end(), 0.0);
    double avg_b = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t r = order[k];
      const auto row = x.subspan(r * d, d);
      const double resid = y[r] - cur.predict(row);
      const double eta = eta0 / std::sqrt(1.0 + static_cast<double>(t) / static_cast<double>(n));
      ++t;
      double g = 0.0;  // derivative of the sample loss w.r.t. the prediction
      if (resid > config.epsilon) g = -1.0;
      else if (resid < -config.epsilon) g = 1.0;
      for (std::size_t c = 0; c < d; ++c) {
        cur.coef[c] -= eta * (cur.coef[c] + config.c * g * row[c]);
        avg[c] += cur.coef[c];
      }
      cur.intercept -= eta * config.c * g;
      avg_b += cur.intercept;
    }
    LinearModel epoch_avg;
    epoch_avg.coef.resize(d);
    for (std::size_t c = 0; c < d; ++c) epoch_avg.coef[c] = avg[c] / static_cast<double>(n);
    epoch_avg.intercept = avg_b / static_cast<double>(n);
    const double obj = svr_objective(epoch_avg, x, n, d, y, config.epsilon, config.c);
    if (obj < best_obj) {
      best_obj = obj;
      best = std::move(epoch_avg);
    }
    if (trace) trace->push_back(best_obj);
  }
  return best;
}

}  // namespace stsb
