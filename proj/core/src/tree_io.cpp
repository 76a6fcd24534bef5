#include <string>

#include <json.hpp>

#include "fairtree/errors.hpp"
#include "fairtree/tree.hpp"

namespace fairtree {

namespace {

using nlohmann::json;

json node_to_json(const TreeNode& node) {
  if (node.is_leaf) {
    return json{{"kind", "leaf"},
                {"label", node.label},
                {"n", node.n},
                {"p1", node.p1}};
  }
  return json{{"kind", "split"},
              {"feature", node.feature_index},
              {"threshold", node.threshold},
              {"fairness",
               json{{"delta", node.fairness.delta},
                    {"ci", json::array({node.fairness.ci_lower, node.fairness.ci_upper})},
                    {"phi", node.fairness.phi},
                    {"significant", node.fairness.significant},
                    {"defined", node.fairness.defined}}},
              {"left", node_to_json(*node.left)},
              {"right", node_to_json(*node.right)}};
}

const json& require(const json& doc, const char* key, const char* where) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw DataError(std::string("model document: missing '") + key + "' in " + where);
  }
  return *it;
}

std::unique_ptr<TreeNode> node_from_json(const json& doc, int depth) {
  if (!doc.is_object()) throw DataError("model document: node is not an object");
  auto node = std::make_unique<TreeNode>();
  node->depth = depth;

  const std::string kind = require(doc, "kind", "node").get<std::string>();
  if (kind == "leaf") {
    node->is_leaf = true;
    node->label = require(doc, "label", "leaf").get<int>();
    if (node->label != 0 && node->label != 1) {
      throw DataError("model document: leaf label must be 0 or 1");
    }
    node->n = require(doc, "n", "leaf").get<long>();
    node->p1 = require(doc, "p1", "leaf").get<double>();
  } else if (kind == "split") {
    node->is_leaf = false;
    node->feature_index = require(doc, "feature", "split").get<int>();
    node->threshold = require(doc, "threshold", "split").get<double>();
    const json& fairness = require(doc, "fairness", "split");
    node->fairness.delta = require(fairness, "delta", "fairness").get<double>();
    const json& ci = require(fairness, "ci", "fairness");
    if (!ci.is_array() || ci.size() != 2) {
      throw DataError("model document: fairness.ci must be [lower, upper]");
    }
    node->fairness.ci_lower = ci[0].get<double>();
    node->fairness.ci_upper = ci[1].get<double>();
    node->fairness.phi = require(fairness, "phi", "fairness").get<double>();
    node->fairness.significant = require(fairness, "significant", "fairness").get<bool>();
    node->fairness.defined = require(fairness, "defined", "fairness").get<bool>();
    node->left = node_from_json(require(doc, "left", "split"), depth + 1);
    node->right = node_from_json(require(doc, "right", "split"), depth + 1);
  } else {
    throw DataError("model document: unknown node kind '" + kind + "'");
  }
  return node;
}

}  // namespace

std::string serialize(const TreeModel& model) {
  if (model.root == nullptr) {
    throw std::invalid_argument("serialize: model has no root");
  }
  json doc{{"schema_version", 1},
           {"config",
            json{{"lambda", model.config.lambda},
                 {"alpha", model.config.alpha},
                 {"max_depth", model.config.max_depth},
                 {"min_leaf", model.config.min_leaf},
                 {"min_split", model.config.min_split},
                 {"fairness_enabled", model.config.fairness_enabled}}},
           {"feature_names", model.feature_names},
           {"root", node_to_json(*model.root)}};
  return doc.dump(2);
}

TreeModel deserialize(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw DataError(std::string("model document is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw DataError("model document: not a JSON object");
    const json& version = require(doc, "schema_version", "document");
    if (!version.is_number_integer() || version.get<int>() != 1) {
      throw DataError("model document: unsupported schema_version");
    }

    TreeModel model;
    const json& config = require(doc, "config", "document");
    model.config.lambda = require(config, "lambda", "config").get<double>();
    model.config.alpha = require(config, "alpha", "config").get<double>();
    model.config.max_depth = require(config, "max_depth", "config").get<int>();
    model.config.min_leaf = require(config, "min_leaf", "config").get<int>();
    model.config.min_split = require(config, "min_split", "config").get<int>();
    model.config.fairness_enabled =
        require(config, "fairness_enabled", "config").get<bool>();
    model.feature_names =
        require(doc, "feature_names", "document").get<std::vector<std::string>>();
    model.root = node_from_json(require(doc, "root", "document"), 0);

    for (const auto& name : model.feature_names) {
      if (name.empty()) throw DataError("model document: empty feature name");
    }
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("model document: malformed field: ") + e.what());
  }
}

}  // namespace fairtree
