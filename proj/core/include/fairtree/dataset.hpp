#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fairtree {

// In-memory tabular dataset: a dense numeric feature matrix (column-major)
// plus binary sensitive and target vectors. Categorical inputs are one-hot
// encoded at ingestion, so the tree only ever sees numbers.
struct Dataset {
  std::vector<std::vector<double>> columns;  // columns[j][i], j < feature count
  std::vector<std::string> feature_names;    // unique, one per column
  std::vector<int> sensitive;                // {0,1}, 1 = privileged
  std::vector<int> target;                   // {0,1}, 1 = positive outcome
  std::size_t n = 0;

  std::size_t feature_count() const { return columns.size(); }

  // Row subset in the given index order.
  Dataset subset(const std::vector<std::size_t>& rows) const;
};

enum class ColumnKind { numeric, categorical, target, sensitive, drop };

// Per-column ingestion directive. Exactly one target and one sensitive
// column per configuration.
struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::numeric;
  std::optional<std::string> positive_label;    // target: maps label to 1
  std::optional<std::string> privileged_label;  // sensitive: maps label to 1
  std::optional<double> pass_threshold;         // target: numeric >= threshold maps to 1
};

struct LoadResult {
  Dataset data;
  std::size_t dropped_rows = 0;  // rows removed by listwise deletion
};

// Parses a column-spec configuration document (JSON:
// {"columns": [{"name", "kind", "positive_label"?, "privileged_label"?,
// "pass_threshold"?}, ...]}). Throws ConfigError on malformed input.
std::vector<ColumnSpec> parse_column_specs(const std::string& json_text);
std::vector<ColumnSpec> load_column_specs(const std::string& path);

// Loads a CSV (comma-separated, double-quote quoting, UTF-8, header row)
// under the given specs. Categorical features become indicator columns
// named "<col>=<level>" (levels sorted); the target/sensitive columns are
// mapped to {0,1}; rows with a missing value ("", "NA", "?") in any used
// column are dropped and counted. CSV columns absent from the specs are
// ignored. Throws DataError on unreadable files, non-binary
// target/sensitive after mapping, or an empty result, and ConfigError when
// a configured column is absent from the header.
LoadResult load_csv(const std::string& path, const std::vector<ColumnSpec>& specs);

// Feature matrix for prediction: encodes a CSV against the feature_names of
// a trained model. Numeric model features must match a numeric column;
// "<col>=<level>" features are rebuilt from the categorical column (unseen
// levels encode as all-zero indicators). Rows with missing values are an
// error here, since predictions are emitted one per input row.
std::vector<std::vector<double>> load_feature_matrix(
    const std::string& path, const std::vector<ColumnSpec>& specs,
    const std::vector<std::string>& feature_names);

struct HoldoutPlan {
  double train_fraction = 0.7;  // strictly inside (0,1)
  std::uint64_t seed = 0;
  bool stratified = true;       // stratify on the joint (target, sensitive) cell
};

struct HoldoutSplit {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_rows;  // ascending indices into the input
  std::vector<std::size_t> test_rows;
};

// Disjoint, exhaustive, seeded partition. Stratified mode allocates
// round(train_fraction*n) training rows across (Y,S) cells by largest
// remainder, so every cell matches the exact fractional allocation within
// one unit. Throws DataError when either part would be empty or n < 10.
HoldoutSplit holdout_split(const Dataset& data, const HoldoutPlan& plan);

}  // namespace fairtree
