#pragma once

// Experiment configuration and the `stsbench` subcommands.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "stsb/corpus.hpp"

namespace stsb {

struct ExperimentConfig {
  std::string train_path, dev_path, test_path;
  /// model name -> split -> score file
  std::map<std::string, std::map<Split, std::string>> score_paths;
  std::string embeddings_path;
  LabelRange label_range = LabelRange::five;
  std::vector<std::string> algorithms{"gbdt", "goss", "adaboost"};
  nlohmann::json grids = nlohmann::json::object();  ///< algorithm -> grid spec
  std::set<int> subset_sizes{2, 3};
  std::string metric = "pearson";
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out_dir = "out";
  std::size_t strat_bins = 10, strat_folds = 3;
  /// `train` command: algorithm, models and one grid point's settings.
  std::string train_algorithm = "gbdt";
  std::vector<std::string> train_models;
  nlohmann::json train_params = nlohmann::json::object();
  nlohmann::json svr = nlohmann::json::object();

  /// Canonical JSON of every field that can influence output bytes.
  nlohmann::json canonical() const;
  /// 16 hex digits of FNV-1a over canonical().dump().
  std::string hash() const;
  /// Model names in config order (sorted by name).
  std::vector<std::string> model_names() const;
};

/// Reads a JSON config; relative paths are resolved against the config's
/// directory. Throws UsageError on unknown keys or malformed values.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json(const nlohmann::json& doc, const std::string& base_dir);

/// Entry point behind main(). Returns the process exit status; errors are
/// reported on `err`.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stsb
