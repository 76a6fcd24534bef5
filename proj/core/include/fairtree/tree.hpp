#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fairtree/dataset.hpp"
#include "fairtree/fairmetrics.hpp"

namespace fairtree {

struct GrowConfig {
  double lambda = 1.0;          // penalty scale in [0,1]; 1 = gentlest
  double alpha = 0.05;          // CI level for the per-split disparity test
  int max_depth = 0;            // required; root is at depth 0
  int min_leaf = 5;             // smallest admissible child
  int min_split = 10;           // smallest node considered for splitting
  bool fairness_enabled = true; // false = ordinary CART on plain gain
};

struct TreeNode {
  bool is_leaf = true;
  int label = 0;       // leaf majority class, ties labeled 1
  long n = 0;          // units reaching the node during growth
  double p1 = 0.0;     // positive-target proportion of those units
  int depth = 0;

  // Internal nodes only.
  int feature_index = -1;
  double threshold = 0.0;
  FairnessReport fairness;  // parity report of the chosen split
  std::unique_ptr<TreeNode> left;
  std::unique_ptr<TreeNode> right;
};

struct TreeModel {
  GrowConfig config;
  std::vector<std::string> feature_names;
  std::unique_ptr<TreeNode> root;
};

// Depth-first recursive growth. A node becomes a leaf at max_depth, below
// min_split, when pure, or when no candidate split has positive penalized
// gain. Throws ConfigError on an invalid config and DataError on an empty
// training set.
TreeModel grow(const Dataset& train, const GrowConfig& config);

// Root-to-leaf descent (x <= threshold goes left) over a column-major
// feature matrix; the column count must match the training schema.
std::vector<int> predict(const TreeModel& model,
                         const std::vector<std::vector<double>>& columns);
std::vector<int> predict(const TreeModel& model, const Dataset& data);

// Smallest depth in the grid achieving maximal validation accuracy of a
// plain CART grown on train. A lightweight stand-in for cost-complexity
// pruning when fixing the depth of baseline and fair trees alike.
int select_baseline_depth(const Dataset& train, const Dataset& val,
                          const std::vector<int>& depth_grid);

// JSON document round trip:
//   {schema_version:1, config:{...}, feature_names:[...], root: node}
//   node = {kind:"leaf", label, n, p1}
//        | {kind:"split", feature, threshold,
//           fairness:{delta, ci:[lo,hi], phi, significant, defined},
//           left, right}
// deserialize throws DataError on malformed documents or a schema-version
// mismatch.
std::string serialize(const TreeModel& model);
TreeModel deserialize(const std::string& document);

}  // namespace fairtree
