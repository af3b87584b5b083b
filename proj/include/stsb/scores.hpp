#pragma once

// Ingestion of per-model score files and assembly of stacking matrices.

#include <cstddef>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "stsb/corpus.hpp"
#include "stsb/text.hpp"

namespace stsb {

struct ScoreColumn {
  std::string model_name;
  Split split = Split::train;
  std::vector<double> values;
};

/// Reads a score CSV (`id,score`, ids 0..n-1 in any order) and returns the
/// values in id order. A `# range=0..1` or `# range=0..5` comment declares
/// the file's scale; values are rescaled to `active`. Without a declaration
/// the file is taken to be on the active scale already.
///
/// AlignmentError for duplicate/missing ids or a row count different from
/// expected_n; ParseError for non-numeric cells.
ScoreColumn load_score_column(std::istream& in, std::size_t expected_n,
                              const std::string& model_name, Split split,
                              LabelRange active = LabelRange::five);

void write_score_column(std::ostream& out, std::span<const double> values, LabelRange range);

/// Dense row-major design matrix with one target per row.
struct FeatureMatrix {
  std::vector<std::string> column_names;
  std::size_t n_rows = 0;
  std::vector<double> cells;
  std::vector<double> targets;
  Split split = Split::train;

  std::size_t n_cols() const { return column_names.size(); }
  double at(std::size_t row, std::size_t col) const { return cells[row * n_cols() + col]; }
  std::span<const double> row(std::size_t r) const {
    return {cells.data() + r * n_cols(), n_cols()};
  }
  bool operator==(const FeatureMatrix&) const = default;
};

/// Columns: the score columns in the given order, then the 12 handcrafted
/// pair features. Targets are the example labels as given.
FeatureMatrix assemble_matrix(Split split, std::span<const LabeledExample> examples,
                              std::span<const PairFeatures> features,
                              std::span<const ScoreColumn> columns);

/// Keeps the named score columns (in the given order) plus every handcrafted
/// column. Throws ValidationError for names not present.
FeatureMatrix select_score_columns(const FeatureMatrix& m, std::span<const std::string> models);

void write_matrix_csv(std::ostream& out, const FeatureMatrix& m);
FeatureMatrix read_matrix_csv(std::istream& in);

/// All size-k combinations of `models` for each k in `sizes` (ascending k),
/// each in lexicographic order of model position.
std::vector<std::vector<std::string>> enumerate_subsets(std::span<const std::string> models,
                                                        const std::set<int>& sizes);

std::string join_subset(std::span<const std::string> subset);

}  // namespace stsb
