#include "fairtree/tree.hpp"

#include <algorithm>
#include <stdexcept>

#include "fairtree/errors.hpp"
#include "fairtree/splitter.hpp"

namespace fairtree {

namespace {

void check_config(const GrowConfig& config) {
  if (config.max_depth < 1) throw ConfigError("max_depth must be >= 1");
  if (config.min_leaf < 1) throw ConfigError("min_leaf must be >= 1");
  if (config.min_split < 2 * config.min_leaf) {
    throw ConfigError("min_split must be >= 2*min_leaf");
  }
  if (!(config.lambda >= 0.0) || !(config.lambda <= 1.0)) {
    throw ConfigError("lambda must lie in [0,1]");
  }
  if (!(config.alpha > 0.0) || !(config.alpha < 1.0)) {
    throw ConfigError("alpha must lie strictly between 0 and 1");
  }
}

std::unique_ptr<TreeNode> grow_node(const Dataset& train,
                                    std::vector<std::size_t> rows, int depth,
                                    const GrowConfig& config) {
  auto node = std::make_unique<TreeNode>();
  node->depth = depth;
  node->n = static_cast<long>(rows.size());

  NodeView view{&train, std::move(rows)};
  node->p1 = view.p1();
  node->label = node->p1 >= 0.5 ? 1 : 0;

  if (depth >= config.max_depth) return node;
  if (node->n < config.min_split) return node;
  if (node->p1 == 0.0 || node->p1 == 1.0) return node;

  const auto best =
      config.fairness_enabled
          ? best_split(view, config.lambda, config.alpha, config.min_leaf)
          : best_split_plain(view, config.alpha, config.min_leaf);
  if (!best) return node;

  node->is_leaf = false;
  node->feature_index = best->feature_index;
  node->threshold = best->threshold;
  node->fairness = best->fairness;

  const auto& column = train.columns[static_cast<std::size_t>(best->feature_index)];
  std::vector<std::size_t> left_rows, right_rows;
  left_rows.reserve(static_cast<std::size_t>(best->n_left));
  right_rows.reserve(static_cast<std::size_t>(best->n_right));
  for (std::size_t i : view.rows) {
    (column[i] <= best->threshold ? left_rows : right_rows).push_back(i);
  }
  node->left = grow_node(train, std::move(left_rows), depth + 1, config);
  node->right = grow_node(train, std::move(right_rows), depth + 1, config);
  return node;
}

const TreeNode* descend(const TreeNode* node,
                        const std::vector<std::vector<double>>& columns,
                        std::size_t row) {
  while (!node->is_leaf) {
    const double value = columns[static_cast<std::size_t>(node->feature_index)][row];
    node = value <= node->threshold ? node->left.get() : node->right.get();
  }
  return node;
}

}  // namespace

TreeModel grow(const Dataset& train, const GrowConfig& config) {
  check_config(config);
  if (train.n == 0) throw DataError("grow: empty training set");
  if (train.target.size() != train.n) {
    throw DataError("grow: training set has no target vector");
  }
  if (train.sensitive.size() != train.n) {
    throw DataError("grow: training set has no sensitive vector");
  }

  TreeModel model;
  model.config = config;
  model.feature_names = train.feature_names;

  std::vector<std::size_t> rows(train.n);
  for (std::size_t i = 0; i < train.n; ++i) rows[i] = i;
  model.root = grow_node(train, std::move(rows), 0, config);
  return model;
}

std::vector<int> predict(const TreeModel& model,
                         const std::vector<std::vector<double>>& columns) {
  if (model.root == nullptr) throw std::invalid_argument("predict: model has no root");
  if (columns.size() != model.feature_names.size()) {
    throw std::invalid_argument("predict: column count does not match the model");
  }
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& column : columns) {
    if (column.size() != rows) {
      throw std::invalid_argument("predict: ragged feature columns");
    }
  }

  std::vector<int> out;
  out.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    out.push_back(descend(model.root.get(), columns, i)->label);
  }
  return out;
}

std::vector<int> predict(const TreeModel& model, const Dataset& data) {
  return predict(model, data.columns);
}

int select_baseline_depth(const Dataset& train, const Dataset& val,
                          const std::vector<int>& depth_grid) {
  if (depth_grid.empty()) {
    throw std::invalid_argument("select_baseline_depth: empty depth grid");
  }
  std::vector<int> grid(depth_grid);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  int best_depth = grid.front();
  double best_accuracy = -1.0;
  for (int depth : grid) {
    GrowConfig config;
    config.fairness_enabled = false;
    config.max_depth = depth;
    const TreeModel model = grow(train, config);
    const double acc = accuracy(predict(model, val), val.target);
    if (acc > best_accuracy) {
      best_accuracy = acc;
      best_depth = depth;
    }
  }
  return best_depth;
}

}  // namespace fairtree
