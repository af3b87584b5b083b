#include <cstdio>
#include <filesystem>
#include <fstream>

#include "stsb/cli.hpp"
#include "stsb/errors.hpp"

namespace stsb {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty() || base.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

template <typename T>
T get(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

json ExperimentConfig::canonical() const {
  json scores = json::object();
  for (const auto& [model, files] : score_paths) {
    json f = json::object();
    for (const auto& [split, path] : files) f[std::string(to_string(split))] = path;
    scores[model] = f;
  }
  return json{{"corpus", {{"train", train_path}, {"dev", dev_path}, {"test", test_path}}},
              {"scores", scores},
              {"embeddings", embeddings_path},
              {"label_range", std::string(to_string(label_range))},
              {"algorithms", algorithms},
              {"grids", grids},
              {"subset_sizes", subset_sizes},
              {"metric", metric},
              {"seed", seed},
              {"stratify", {{"bins", strat_bins}, {"folds", strat_folds}}},
              {"train", {{"algorithm", train_algorithm},
                         {"models", train_models},
                         {"params", train_params}}},
              {"svr", svr}};
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical().dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> ExperimentConfig::model_names() const {
  std::vector<std::string> names;
  for (const auto& [m, _] : score_paths) names.push_back(m);
  return names;
}

ExperimentConfig config_from_json(const json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  static const std::set<std::string> known = {
      "corpus", "scores", "embeddings", "label_range", "algorithms", "grids", "subset_sizes",
      "metric", "seed",   "jobs",       "out",         "stratify",   "train", "svr"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.count(key)) throw UsageError("unknown config field '" + key + "'");
  }
  ExperimentConfig c;
  if (doc.contains("corpus")) {
    const auto& corpus = doc.at("corpus");
    if (corpus.contains("train")) c.train_path = resolve(base_dir, get<std::string>(corpus, "train"));
    if (corpus.contains("dev")) c.dev_path = resolve(base_dir, get<std::string>(corpus, "dev"));
    if (corpus.contains("test")) c.test_path = resolve(base_dir, get<std::string>(corpus, "test"));
  }
  if (doc.contains("scores")) {
    for (const auto& [model, files] : doc.at("scores").items()) {
      if (!files.is_object()) throw UsageError("scores." + model + " must map splits to files");
      for (const auto& [split, path] : files.items()) {
        Split s;
        try {
          s = parse_split(split);
        } catch (const std::exception&) {
          throw UsageError("scores." + model + ": unknown split '" + split + "'");
        }
        c.score_paths[model][s] = resolve(base_dir, path.get<std::string>());
      }
    }
  }
  if (doc.contains("embeddings")) c.embeddings_path = resolve(base_dir, get<std::string>(doc, "embeddings"));
  if (doc.contains("label_range")) {
    try {
      c.label_range = parse_label_range(get<std::string>(doc, "label_range"));
    } catch (const ValidationError& e) {
      throw UsageError(e.what());
    }
  }
  if (doc.contains("algorithms")) c.algorithms = get<std::vector<std::string>>(doc, "algorithms");
  if (doc.contains("grids")) c.grids = doc.at("grids");
  if (doc.contains("subset_sizes")) {
    const auto sizes = get<std::vector<int>>(doc, "subset_sizes");
    c.subset_sizes = std::set<int>(sizes.begin(), sizes.end());
  }
  if (doc.contains("metric")) c.metric = get<std::string>(doc, "metric");
  if (doc.contains("seed")) c.seed = get<std::uint64_t>(doc, "seed");
  if (doc.contains("jobs")) c.jobs = get<std::size_t>(doc, "jobs");
  if (doc.contains("out")) c.out_dir = resolve(base_dir, get<std::string>(doc, "out"));
  if (doc.contains("stratify")) {
    const auto& s = doc.at("stratify");
    if (s.contains("bins")) c.strat_bins = get<std::size_t>(s, "bins");
    if (s.contains("folds")) c.strat_folds = get<std::size_t>(s, "folds");
  }
  if (doc.contains("train")) {
    const auto& t = doc.at("train");
    if (t.contains("algorithm")) c.train_algorithm = get<std::string>(t, "algorithm");
    if (t.contains("models")) c.train_models = get<std::vector<std::string>>(t, "models");
    if (t.contains("params")) c.train_params = t.at("params");
  }
  if (doc.contains("svr")) c.svr = doc.at("svr");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  return config_from_json(doc, fs::path(path).parent_path().string());
}

}  // namespace stsb
