#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stsb/analysis.hpp"
#include "stsb/baselines.hpp"
#include "stsb/cli.hpp"
#include "stsb/csv.hpp"
#include "stsb/errors.hpp"
#include "stsb/grid.hpp"
#include "stsb/model_io.hpp"
#include "stsb/scores.hpp"
#include "stsb/stats.hpp"
#include "stsb/svg.hpp"
#include "stsb/text.hpp"

namespace stsb {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::optional<std::string> out_dir;
  std::optional<std::string> stsb_dir;
  std::optional<std::string> label_range;
  // per-command
  std::optional<std::string> algorithm;
  std::vector<std::string> models;
  std::vector<std::string> algorithms;
  std::optional<std::string> metric;
  std::string model_path;
  std::string predictions_path;
  std::string split = "dev";
};

class Runner {
 public:
  Runner(ExperimentConfig cfg, const Options& opt, std::ostream& out, std::ostream& err)
      : cfg_(std::move(cfg)), opt_(opt), out_(out), err_(err), hash_(cfg_.hash()) {}

  void ingest();
  void features();
  void scores_check();
  void train();
  void grid_search();
  void evaluate();
  void baseline();
  void split_test();
  void stratify();
  void analyze();
  void plot();

  void write_run_metadata(const std::string& command) {
    json meta{{"command", command},
              {"config_hash", hash_},
              {"seed", cfg_.seed},
              {"config", cfg_.canonical()},
              {"metadata", {{"finished_at", timestamp()}}}};
    auto f = open("run-" + command + ".json");
    f << meta.dump(2) << '\n';
  }

 private:
  static std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
  }

  std::ofstream open(const std::string& name) {
    fs::create_directories(cfg_.out_dir);
    const auto path = fs::path(cfg_.out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path.string());
    written_.push_back(path.string());
    return f;
  }

  std::ofstream open_csv(const std::string& name) {
    auto f = open(name);
    f << "# config=" << hash_ << " seed=" << cfg_.seed << '\n';
    return f;
  }

  double label_max() const { return range_max(cfg_.label_range); }

  const Corpus& corpus() {
    if (!corpus_) {
      if (cfg_.train_path.empty() && cfg_.dev_path.empty() && cfg_.test_path.empty()) {
        throw UsageError("no corpus files configured (set corpus.* or --stsb-dir)");
      }
      Corpus c = load_corpus(cfg_.train_path, cfg_.dev_path, cfg_.test_path);
      if (cfg_.label_range == LabelRange::unit) {
        for (Split s : kAllSplits) c.split(s) = scale_labels(c.split(s), LabelRange::unit);
      }
      corpus_ = std::move(c);
    }
    return *corpus_;
  }

  const std::vector<TokenizedSentence>& sentences(Split s, bool first) {
    auto key = std::make_pair(s, first);
    auto it = sentences_.find(key);
    if (it != sentences_.end()) return it->second;
    std::vector<TokenizedSentence> out;
    for (const auto& ex : corpus().split(s)) {
      out.push_back(analyze_sentence(first ? ex.sentence_a : ex.sentence_b));
    }
    return sentences_.emplace(key, std::move(out)).first->second;
  }

  std::vector<double> labels(Split s) {
    std::vector<double> y;
    for (const auto& ex : corpus().split(s)) y.push_back(ex.label);
    return y;
  }

  // Every requested model must have a score file for every split needed.
  void check_models(const std::vector<std::string>& models, std::initializer_list<Split> splits) {
    for (const auto& m : models) {
      auto it = cfg_.score_paths.find(m);
      if (it == cfg_.score_paths.end()) throw UsageError("unknown model '" + m + "'");
      for (Split s : splits) {
        if (!it->second.count(s)) {
          throw UsageError("model '" + m + "' has no score file for split " +
                           std::string(to_string(s)));
        }
      }
    }
  }

  ScoreColumn score_column(const std::string& model, Split s) {
    const auto& path = cfg_.score_paths.at(model).at(s);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open score file " + path);
    try {
      return load_score_column(in, corpus().split(s).size(), model, s, cfg_.label_range);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }

  FeatureMatrix matrix(Split s, const std::vector<std::string>& models) {
    const auto& a = sentences(s, true);
    const auto& b = sentences(s, false);
    std::vector<PairFeatures> feats;
    for (std::size_t i = 0; i < a.size(); ++i) feats.push_back(pair_feature_vector(a[i], b[i]));
    std::vector<ScoreColumn> cols;
    for (const auto& m : models) cols.push_back(score_column(m, s));
    return assemble_matrix(s, corpus().split(s), feats, cols);
  }

  std::vector<std::string> selected_models() const {
    if (!opt_.models.empty()) return opt_.models;
    if (!cfg_.train_models.empty()) return cfg_.train_models;
    return cfg_.model_names();
  }

  json snapshot(const StackingModel& m) const {
    return json{{"config_hash", hash_}, {"seed", cfg_.seed}, {"model", to_json(m)}};
  }

  struct EvalRow {
    std::string model;
    Split split;
    double pearson, spearman;
    std::size_t n;
  };

  // Rows for other models already in the report are kept.
  void upsert_eval_report(const std::vector<EvalRow>& rows) {
    const auto path = fs::path(cfg_.out_dir) / "eval_report.csv";
    std::vector<std::vector<std::string>> kept;
    std::set<std::string> replaced;
    for (const auto& r : rows) replaced.insert(r.model);
    if (fs::exists(path)) {
      std::ifstream in(path);
      const auto t = csv::read(in);
      for (const auto& r : t.rows) {
        if (!r.empty() && !replaced.count(r[0])) kept.push_back(r);
      }
    }
    auto f = open_csv("eval_report.csv");
    f << "model,split,pearson,spearman,n\n";
    for (const auto& r : kept) {
      for (std::size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << r[i];
      f << '\n';
    }
    for (const auto& r : rows) {
      f << r.model << ',' << to_string(r.split) << ',' << csv::format_double(r.pearson) << ','
        << csv::format_double(r.spearman) << ',' << r.n << '\n';
      out_ << std::left << std::setw(28) << r.model << std::setw(6) << to_string(r.split)
           << " pearson=" << std::fixed << std::setprecision(5) << r.pearson
           << " spearman=" << r.spearman << std::defaultfloat << '\n';
    }
  }

  EvalRow eval_row(const std::string& model, Split s, std::span<const double> pred) {
    const auto y = labels(s);
    const auto [p, r] = correlation_pair(pred, y);
    return {model, s, p, r, y.size()};
  }

  ExperimentConfig cfg_;
  const Options& opt_;
  std::ostream& out_;
  std::ostream& err_;
  std::string hash_;
  std::optional<Corpus> corpus_;
  std::map<std::pair<Split, bool>, std::vector<TokenizedSentence>> sentences_;
  std::vector<std::string> written_;
};

void Runner::ingest() {
  const auto& c = corpus();
  {
    auto f = open("corpus.json");
    json doc = to_json(c);
    doc["config_hash"] = hash_;
    doc["seed"] = cfg_.seed;
    f << doc.dump() << '\n';
  }
  const auto table = source_breakdown(c);
  std::map<std::pair<std::string, std::string>, std::array<std::size_t, 3>> pivot;
  for (const auto& [key, n] : table) {
    pivot[{key.genre, key.source_file}][static_cast<std::size_t>(key.split)] = n;
  }
  auto f = open_csv("breakdown.csv");
  f << "genre,source_file,train,dev,test\n";
  out_ << std::left << std::setw(10) << "genre" << std::setw(18) << "source_file" << std::right
       << std::setw(7) << "train" << std::setw(7) << "dev" << std::setw(7) << "test" << '\n';
  for (const auto& [key, counts] : pivot) {
    f << key.first << ',' << key.second << ',' << counts[0] << ',' << counts[1] << ','
      << counts[2] << '\n';
    out_ << std::left << std::setw(10) << key.first << std::setw(18) << key.second << std::right
         << std::setw(7) << counts[0] << std::setw(7) << counts[1] << std::setw(7) << counts[2]
         << '\n';
  }
  f << "total,," << c.train.size() << ',' << c.dev.size() << ',' << c.test.size() << '\n';
  out_ << std::left << std::setw(28) << "total" << std::right << std::setw(7) << c.train.size()
       << std::setw(7) << c.dev.size() << std::setw(7) << c.test.size() << '\n';
}

void Runner::features() {
  for (Split s : kAllSplits) {
    if (corpus().split(s).empty()) continue;
    const auto& a = sentences(s, true);
    const auto& b = sentences(s, false);
    std::vector<PairFeatures> rows;
    for (std::size_t i = 0; i < a.size(); ++i) rows.push_back(pair_feature_vector(a[i], b[i]));
    auto f = open_csv("features_" + std::string(to_string(s)) + ".csv");
    write_feature_csv(f, rows);
    out_ << to_string(s) << ": " << rows.size() << " feature rows\n";
  }
}

void Runner::scores_check() {
  if (cfg_.score_paths.empty()) throw UsageError("no score files configured");
  auto f = open_csv("scores_check.csv");
  f << "model,split,n,pearson,spearman\n";
  for (const auto& [model, files] : cfg_.score_paths) {
    for (const auto& [split, _] : files) {
      const auto col = score_column(model, split);
      const auto y = labels(split);
      const auto [p, r] = correlation_pair(col.values, y);
      f << model << ',' << to_string(split) << ',' << y.size() << ',' << csv::format_double(p)
        << ',' << csv::format_double(r) << '\n';
      out_ << model << ' ' << to_string(split) << ": n=" << y.size() << " pearson=" << p
           << " spearman=" << r << '\n';
    }
  }
}

void Runner::train() {
  const auto models = selected_models();
  check_models(models, {Split::train});
  Algorithm alg;
  try {
    alg = parse_algorithm(opt_.algorithm.value_or(cfg_.train_algorithm));
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  const GridPoint point = point_from_json(alg, cfg_.train_params, cfg_.seed);
  const auto train_m = matrix(Split::train, models);
  const auto model = train_stacking(train_m, models, point, cfg_.label_range);
  {
    auto f = open("model.json");
    f << snapshot(model).dump(1) << '\n';
  }
  out_ << "trained " << to_string(alg) << " on " << join_subset(models) << " ("
       << point.describe() << ")\n";
  const auto pred = model.predict(train_m);
  const auto [p, r] = correlation_pair(pred, train_m.targets);
  out_ << "train pearson=" << p << " spearman=" << r << '\n';
}

void Runner::grid_search() {
  const auto models = opt_.models.empty() ? cfg_.model_names() : opt_.models;
  check_models(models, {Split::train, Split::dev});
  const auto algs = opt_.algorithms.empty() ? cfg_.algorithms : opt_.algorithms;
  if (algs.empty()) throw UsageError("no algorithms selected");
  std::vector<std::vector<std::string>> subsets;
  try {
    subsets = enumerate_subsets(models, cfg_.subset_sizes);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  std::vector<std::vector<GridPoint>> grids;
  for (const auto& name : algs) {
    Algorithm a;
    try {
      a = parse_algorithm(name);
    } catch (const ValidationError& e) {
      throw UsageError(e.what());
    }
    grids.push_back(grid_from_json(a, cfg_.grids.contains(name) ? cfg_.grids.at(name) : json(),
                                   cfg_.seed));
  }
  const auto metric = parse_metric(opt_.metric.value_or(cfg_.metric));
  const auto train_m = matrix(Split::train, models);
  const auto dev_m = matrix(Split::dev, models);
  const auto report =
      stsb::grid_search(grids, subsets, train_m, dev_m, metric, cfg_.label_range, cfg_.jobs);
  {
    auto f = open_csv("grid_report.csv");
    write_grid_report_csv(f, report);
  }
  const auto& best = report.rows[report.best];
  const auto model = train_stacking(train_m, best.subset, best.point, cfg_.label_range);
  {
    auto f = open("best_model.json");
    f << snapshot(model).dump(1) << '\n';
  }
  out_ << report.rows.size() << " cells; best: " << to_string(best.algorithm) << " on "
       << join_subset(best.subset) << " (" << best.point.describe()
       << ") dev pearson=" << best.dev_pearson << " spearman=" << best.dev_spearman << '\n';
}

void Runner::evaluate() {
  const std::string path =
      opt_.model_path.empty() ? (fs::path(cfg_.out_dir) / "model.json").string() : opt_.model_path;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open model snapshot " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  const auto model = stacking_from_json(doc.contains("model") ? doc.at("model") : doc);
  if (model.label_range != cfg_.label_range) {
    throw UsageError("model was trained on label range " +
                     std::string(to_string(model.label_range)) + " but config uses " +
                     std::string(to_string(cfg_.label_range)));
  }
  check_models(model.models, {});
  const std::string name = "stack:" + std::string(to_string(model.algorithm)) + ":" +
                           join_subset(model.models);
  std::vector<EvalRow> rows;
  for (Split s : {Split::dev, Split::test}) {
    if (corpus().split(s).empty()) continue;
    bool have_all = true;
    for (const auto& m : model.models) have_all = have_all && cfg_.score_paths.at(m).count(s);
    if (!have_all) {
      err_ << "warning: skipping " << to_string(s) << ", score files missing\n";
      continue;
    }
    const auto m = matrix(s, model.models);
    const auto pred = model.predict(m);
    {
      auto f = open_csv("predictions_" + std::string(to_string(s)) + ".csv");
      write_score_column(f, pred, cfg_.label_range);
    }
    for (std::size_t c = 0; c < model.models.size(); ++c) {
      std::vector<double> col(m.n_rows);
      for (std::size_t r = 0; r < m.n_rows; ++r) col[r] = m.at(r, c);
      rows.push_back(eval_row(model.models[c], s, col));
    }
    rows.push_back(eval_row(name, s, pred));
  }
  if (rows.empty()) throw UsageError("nothing to evaluate: no dev/test split with score files");
  upsert_eval_report(rows);
}

void Runner::baseline() {
  if (cfg_.embeddings_path.empty()) throw UsageError("no embeddings file configured");
  std::ifstream in(cfg_.embeddings_path);
  if (!in) throw UsageError("cannot open embeddings " + cfg_.embeddings_path);
  WordVectorTable table;
  try {
    table = read_word_vectors(in);
  } catch (const ParseError& e) {
    throw ParseError(cfg_.embeddings_path + ": " + e.what());
  }
  if (corpus().train.empty()) throw UsageError("baselines need a train split");

  struct SplitDesign {
    std::vector<double> cosine, x;
    std::size_t n = 0, oov = 0;
  };
  std::map<Split, SplitDesign> designs;
  std::size_t d = 0;
  for (Split s : kAllSplits) {
    if (corpus().split(s).empty()) continue;
    auto& sd = designs[s];
    const auto& a = sentences(s, true);
    const auto& b = sentences(s, false);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto ea = embed_sentence(a[i], table);
      const auto eb = embed_sentence(b[i], table);
      sd.oov += ea.out_of_vocabulary + eb.out_of_vocabulary;
      sd.cosine.push_back(cosine_baseline(ea.vec, eb.vec));
      const auto row = pair_design_row(ea.vec, eb.vec);
      d = row.size();
      sd.x.insert(sd.x.end(), row.begin(), row.end());
      ++sd.n;
    }
    if (sd.oov) {
      err_ << "warning: " << sd.oov << " " << to_string(s)
           << " sentences have no in-vocabulary token\n";
    }
  }
  const auto& tr = designs.at(Split::train);
  const auto ytr = labels(Split::train);
  const auto lr = fit_linear_regression(tr.x, tr.n, d, ytr);
  if (lr.ridge) err_ << "warning: " << lr.warning << '\n';
  SvrConfig sc;
  sc.seed = cfg_.seed;
  sc.epsilon = cfg_.svr.value("epsilon", label_max() / 50.0);
  sc.c = cfg_.svr.value("c", 1.0);
  sc.epochs = cfg_.svr.value("epochs", std::size_t{50});
  const auto svr = fit_linear_svr(tr.x, tr.n, d, ytr, sc);

  std::vector<EvalRow> rows;
  for (const auto& [s, sd] : designs) {
    std::vector<double> plr(sd.n), psvr(sd.n);
    for (std::size_t i = 0; i < sd.n; ++i) {
      const std::span<const double> row(sd.x.data() + i * d, d);
      plr[i] = lr.predict(row);
      psvr[i] = svr.predict(row);
    }
    rows.push_back(eval_row("baseline:cosine", s, sd.cosine));
    rows.push_back(eval_row("baseline:linear_regression", s, plr));
    rows.push_back(eval_row("baseline:svr", s, psvr));
  }
  upsert_eval_report(rows);
}

void Runner::split_test() {
  const std::pair<const char*, std::pair<Split, Split>> pairs[] = {
      {"train/dev", {Split::train, Split::dev}},
      {"dev/test", {Split::dev, Split::test}},
      {"train/test", {Split::train, Split::test}}};
  auto f = open_csv("split_test.csv");
  f << "pair,D,p\n";
  for (const auto& [name, sp] : pairs) {
    if (corpus().split(sp.first).empty() || corpus().split(sp.second).empty()) continue;
    const auto ks = ks_two_sample(labels(sp.first), labels(sp.second));
    f << name << ',' << csv::format_double(ks.statistic) << ',' << csv::format_double(ks.p_value)
      << '\n';
    out_ << std::left << std::setw(11) << name << " D=" << std::fixed << std::setprecision(5)
         << ks.statistic << std::scientific << std::setprecision(3) << " p=" << ks.p_value
         << std::defaultfloat << '\n';
  }
}

void Runner::stratify() {
  std::vector<double> pooled;
  std::vector<std::pair<Split, std::size_t>> origin;
  for (Split s : kAllSplits) {
    for (const auto& ex : corpus().split(s)) {
      pooled.push_back(ex.label);
      origin.emplace_back(s, ex.id);
    }
  }
  if (pooled.size() < cfg_.strat_folds) throw UsageError("fewer examples than folds");
  const auto split = stratified_folds(pooled, cfg_.strat_bins, cfg_.strat_folds, cfg_.seed,
                                      label_max());
  {
    auto f = open_csv("stratify.csv");
    f << "split,id,label,bin,fold\n";
    for (std::size_t i = 0; i < pooled.size(); ++i) {
      f << to_string(origin[i].first) << ',' << origin[i].second << ','
        << csv::format_double(pooled[i]) << ',' << split.bin[i] << ',' << split.fold[i] << '\n';
    }
  }
  auto f = open_csv("stratify_ks.csv");
  f << "pair,D,p\n";
  double worst = 0.0;
  for (std::size_t a = 0; a < split.n_folds; ++a) {
    for (std::size_t b = a + 1; b < split.n_folds; ++b) {
      std::vector<double> la, lb;
      for (auto i : split.fold_members(a)) la.push_back(pooled[i]);
      for (auto i : split.fold_members(b)) lb.push_back(pooled[i]);
      const auto ks = ks_two_sample(la, lb);
      worst = std::max(worst, ks.statistic);
      f << "fold" << a << "/fold" << b << ',' << csv::format_double(ks.statistic) << ','
        << csv::format_double(ks.p_value) << '\n';
    }
  }
  out_ << split.n_folds << " folds over " << split.n_bins << " bins; max inter-fold D="
       << worst << '\n';
  if (!corpus().train.empty() && !corpus().dev.empty()) {
    out_ << "official train/dev D="
         << ks_two_sample(labels(Split::train), labels(Split::dev)).statistic << '\n';
  }
}

void Runner::analyze() {
  Split s;
  try {
    s = parse_split(opt_.split);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  const auto& ex = corpus().split(s);
  const std::string path =
      opt_.predictions_path.empty()
          ? (fs::path(cfg_.out_dir) / ("predictions_" + opt_.split + ".csv")).string()
          : opt_.predictions_path;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open predictions " + path);
  const auto pred = load_score_column(in, ex.size(), "predictions", s, cfg_.label_range).values;
  const auto y = labels(s);

  const auto spans = label_span_mae(pred, y, label_max());
  {
    auto f = open_csv("span_mae.csv");
    write_span_csv(f, spans);
  }
  const auto rep =
      edge_error_report(ex, pred, sentences(s, true), sentences(s, false), label_max());
  for (const auto& w : rep.warnings) err_ << "warning: " << w << '\n';
  {
    auto f = open_csv("density.csv");
    write_density_csv(f, rep.curves);
  }
  {
    auto f = open_csv("scatter.csv");
    write_scatter_csv(f, rep.scatter);
  }
  {
    auto f = open_csv("edge_rows.csv");
    f << "id,label,pred,correct";
    for (auto name : edge_feature_names()) f << ',' << name;
    f << '\n';
    for (const auto& r : rep.rows) {
      f << r.id << ',' << csv::format_double(r.label) << ',' << csv::format_double(r.pred) << ','
        << (r.correct ? 1 : 0) << ',' << csv::format_double(r.lemma_jaccard) << ','
        << csv::format_double(r.lemma_jaccard_no_stopwords) << ','
        << csv::format_double(r.meaningful_lemmas_a) << ','
        << csv::format_double(r.meaningful_lemmas_b) << '\n';
    }
  }
  std::size_t correct = 0;
  for (const auto& r : rep.rows) correct += r.correct;
  out_ << rep.rows.size() << " edge examples: " << correct << " correct, "
       << rep.rows.size() - correct << " incorrect\n";
  for (const auto& r : spans) {
    out_ << std::left << std::setw(10) << r.span << ' '
         << (r.mae ? csv::format_double(*r.mae) : std::string("-")) << " (n=" << r.count
         << ")\n";
  }
}

void Runner::plot() {
  const auto dir = fs::path(cfg_.out_dir);
  std::size_t made = 0;
  if (std::ifstream in(dir / "density.csv"); in) {
    const auto t = csv::read(in);
    std::map<std::string, std::map<std::string, PlotSeries>> series;
    std::vector<std::string> order;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const auto& row = t.rows[r];
      if (row.size() != 4) throw ParseError("density.csv: expected 4 columns", t.row_lines[r]);
      if (!series.count(row[0])) order.push_back(row[0]);
      auto& ps = series[row[0]][row[1]];
      ps.name = row[1];
      ps.color = row[1] == "correct" ? "#2ca02c" : "#d62728";
      ps.x.push_back(csv::parse_double(row[2], t.row_lines[r]));
      ps.y.push_back(csv::parse_double(row[3], t.row_lines[r]));
    }
    for (const auto& feature : order) {
      std::vector<PlotSeries> lines;
      for (auto& [_, ps] : series[feature]) lines.push_back(ps);
      auto f = open("density_" + feature + ".svg");
      f << svg_lines(lines, {feature, feature, "density"});
      ++made;
    }
  }
  if (std::ifstream in(dir / "scatter.csv"); in) {
    const auto t = csv::read(in);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (t.rows[r].size() != 2) throw ParseError("scatter.csv: expected 2 columns", t.row_lines[r]);
      pts.emplace_back(csv::parse_double(t.rows[r][0], t.row_lines[r]),
                       csv::parse_double(t.rows[r][1], t.row_lines[r]));
    }
    auto f = open("scatter.svg");
    f << svg_scatter(pts, {"predictions against labels", "label", "prediction"});
    ++made;
  }
  if (!made) throw UsageError("nothing to plot: run `analyze` first (" + dir.string() + ")");
  out_ << made << " plots written to " << dir.string() << '\n';
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Stacking and analysis workbench for semantic textual similarity", "stsbench"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.add_option("--config", opt.config_path, "JSON experiment config");
  app.add_option("--seed", opt.seed, "random seed (overrides config)");
  app.add_option("--jobs", opt.jobs, "worker threads for grid search")->check(CLI::PositiveNumber);
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--stsb-dir", opt.stsb_dir,
                 "directory holding sts-train.csv, sts-dev.csv, sts-test.csv");
  app.add_option("--label-range", opt.label_range, "five (0..5) or unit (0..1)");

  struct Sub {
    const char* name;
    const char* help;
    void (Runner::*fn)();
  };
  const Sub subs[] = {
      {"ingest", "parse the corpus, write corpus.json and breakdown.csv", &Runner::ingest},
      {"features", "write handcrafted pair features per split", &Runner::features},
      {"scores-check", "validate score files and report their correlations",
       &Runner::scores_check},
      {"train", "fit one stacking model and write model.json", &Runner::train},
      {"grid-search", "search algorithms, grids and model subsets on dev",
       &Runner::grid_search},
      {"evaluate", "score a model snapshot on dev/test", &Runner::evaluate},
      {"baseline", "averaged word vector baselines", &Runner::baseline},
      {"split-test", "KS test between the official splits", &Runner::split_test},
      {"stratify", "stratified binned folds over pooled labels", &Runner::stratify},
      {"analyze", "edge error analysis of a prediction file", &Runner::analyze},
      {"plot", "render analysis CSVs to SVG", &Runner::plot},
  };
  std::map<CLI::App*, const Sub*> by_app;
  for (const auto& s : subs) {
    auto* sc = app.add_subcommand(s.name, s.help);
    by_app[sc] = &s;
    const std::string name = s.name;
    if (name == "train") {
      sc->add_option("--algorithm", opt.algorithm, "gbdt, goss or adaboost");
      sc->add_option("--models", opt.models, "score columns to use")->delimiter(',');
    } else if (name == "grid-search") {
      sc->add_option("--algorithms", opt.algorithms, "algorithms to search")->delimiter(',');
      sc->add_option("--models", opt.models, "score columns to use")->delimiter(',');
      sc->add_option("--metric", opt.metric, "pearson or spearman");
    } else if (name == "evaluate") {
      sc->add_option("--model", opt.model_path, "model snapshot (default <out>/model.json)");
    } else if (name == "analyze") {
      sc->add_option("--predictions", opt.predictions_path,
                     "prediction file (default <out>/predictions_<split>.csv)");
      sc->add_option("--split", opt.split, "dev or test");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    ExperimentConfig cfg = opt.config_path.empty() ? ExperimentConfig{} : load_config(opt.config_path);
    if (opt.stsb_dir) {
      const fs::path d(*opt.stsb_dir);
      cfg.train_path = (d / "sts-train.csv").string();
      cfg.dev_path = (d / "sts-dev.csv").string();
      cfg.test_path = (d / "sts-test.csv").string();
    }
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.jobs) cfg.jobs = *opt.jobs;
    if (opt.out_dir) cfg.out_dir = *opt.out_dir;
    if (opt.label_range) {
      try {
        cfg.label_range = parse_label_range(*opt.label_range);
      } catch (const ValidationError& e) {
        throw UsageError(e.what());
      }
    }
    const Sub* sub = by_app.at(app.get_subcommands().front());
    Runner runner(std::move(cfg), opt, out, err);
    (runner.*(sub->fn))();
    runner.write_run_metadata(sub->name);
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace stsb
