#include "fairtree/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fairtree/errors.hpp"

namespace fairtree {

namespace {

using nlohmann::json;

void check_options(const TuneOptions& options) {
  if (options.grid.empty()) throw ConfigError("lambda grid must be nonempty");
  for (double lambda : options.grid) {
    if (!(lambda >= 0.0) || !(lambda <= 1.0)) {
      throw ConfigError("lambda grid values must lie in [0,1]");
    }
  }
  if (options.depth < 1) throw ConfigError("depth must be >= 1");
  if (!(options.alpha > 0.0) || !(options.alpha < 1.0)) {
    throw ConfigError("alpha must lie strictly between 0 and 1");
  }
  if (!(options.epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
  if (!(options.train_fraction > 0.0) || !(options.train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie strictly between 0 and 1");
  }
  if (options.min_leaf < 1) throw ConfigError("min_leaf must be >= 1");
  if (options.min_split < 2 * options.min_leaf) {
    throw ConfigError("min_split must be >= 2*min_leaf");
  }
}

GrowConfig grow_config(const TuneOptions& options, double lambda, bool fairness) {
  GrowConfig config;
  config.lambda = lambda;
  config.alpha = options.alpha;
  config.max_depth = options.depth;
  config.min_leaf = options.min_leaf;
  config.min_split = options.min_split;
  config.fairness_enabled = fairness;
  return config;
}

EvalReport evaluate(const TreeModel& model, const Dataset& data, double alpha) {
  const std::vector<int> predictions = predict(model, data);
  EvalReport report;
  report.accuracy = accuracy(predictions, data.target);
  report.fairness = statistical_parity(predictions, data.sensitive, alpha);
  return report;
}

// Shortest decimal that parses back to the same double.
std::string number_repr(double value) { return json(value).dump(); }

json eval_json(const EvalReport& report) {
  return json{{"accuracy", report.accuracy},
              {"delta", report.fairness.delta},
              {"ci", json::array({report.fairness.ci_lower, report.fairness.ci_upper})},
              {"significant", report.fairness.significant},
              {"defined", report.fairness.defined}};
}

}  // namespace

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  grid.reserve(21);
  for (int i = 0; i <= 20; ++i) grid.push_back(static_cast<double>(i) / 20.0);
  return grid;
}

double select_lambda(const std::vector<CurvePoint>& curve, double epsilon) {
  if (curve.empty()) throw std::invalid_argument("select_lambda: empty curve");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("select_lambda: epsilon must be >= 0");

  bool found = false;
  double best_lambda = 0.0;
  double best_accuracy = 0.0;
  for (const CurvePoint& point : curve) {
    if (point.val_significant) continue;
    if (!found || point.val_accuracy >= best_accuracy) {
      found = true;
      best_accuracy = point.val_accuracy;
      best_lambda = point.lambda;
    }
  }
  if (found) return best_lambda;

  double max_accuracy = curve.front().val_accuracy;
  for (const CurvePoint& point : curve) {
    max_accuracy = std::max(max_accuracy, point.val_accuracy);
  }
  double best_delta = 0.0;
  for (const CurvePoint& point : curve) {
    if (point.val_accuracy < max_accuracy - epsilon) continue;
    const double magnitude = std::fabs(point.val_delta);
    if (!found || magnitude <= best_delta) {
      found = true;
      best_delta = magnitude;
      best_lambda = point.lambda;
    }
  }
  return best_lambda;
}

TuneResult tune_parts(const Dataset& train_full, const Dataset& test,
                      const TuneOptions& options) {
  check_options(options);

  std::vector<double> grid(options.grid);
  std::sort(grid.begin(), grid.end());

  HoldoutPlan inner_plan;
  inner_plan.train_fraction = options.train_fraction;
  inner_plan.seed = options.seed + 1;
  inner_plan.stratified = options.stratified;
  const HoldoutSplit inner = holdout_split(train_full, inner_plan);

  TuneResult result;
  result.depth = options.depth;
  result.alpha = options.alpha;
  result.seed = options.seed;

  for (double lambda : grid) {
    const TreeModel model = grow(inner.train, grow_config(options, lambda, true));
    const std::vector<int> predictions = predict(model, inner.test);
    const FairnessReport parity =
        statistical_parity(predictions, inner.test.sensitive, options.alpha);
    CurvePoint point;
    point.lambda = lambda;
    point.val_accuracy = accuracy(predictions, inner.test.target);
    point.val_delta = parity.delta;
    point.ci_lower = parity.ci_lower;
    point.ci_upper = parity.ci_upper;
    point.val_significant = parity.significant;
    result.curve.push_back(point);
  }

  result.lambda_star = select_lambda(result.curve, options.epsilon);
  result.final_model =
      grow(train_full, grow_config(options, result.lambda_star, true));
  result.baseline_model = grow(train_full, grow_config(options, 1.0, false));

  result.test_report = evaluate(result.final_model, test, options.alpha);
  result.baseline_report = evaluate(result.baseline_model, test, options.alpha);
  result.train_report = evaluate(result.final_model, train_full, options.alpha);
  result.baseline_train_report =
      evaluate(result.baseline_model, train_full, options.alpha);

  std::vector<int> sample_target(train_full.target);
  sample_target.insert(sample_target.end(), test.target.begin(), test.target.end());
  std::vector<int> sample_sensitive(train_full.sensitive);
  sample_sensitive.insert(sample_sensitive.end(), test.sensitive.begin(),
                          test.sensitive.end());
  result.sample_report =
      statistical_parity(sample_target, sample_sensitive, options.alpha);
  return result;
}

TuneResult tune(const Dataset& data, const TuneOptions& options) {
  check_options(options);
  HoldoutPlan outer_plan;
  outer_plan.train_fraction = options.train_fraction;
  outer_plan.seed = options.seed;
  outer_plan.stratified = options.stratified;
  const HoldoutSplit outer = holdout_split(data, outer_plan);
  return tune_parts(outer.train, outer.test, options);
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  std::ostringstream out;
  out << "lambda,val_accuracy,val_delta,ci_lower,ci_upper,significant\n";
  for (const CurvePoint& point : curve) {
    out << number_repr(point.lambda) << ',' << number_repr(point.val_accuracy)
        << ',' << number_repr(point.val_delta) << ',' << number_repr(point.ci_lower)
        << ',' << number_repr(point.ci_upper) << ','
        << (point.val_significant ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string summary_json(const TuneResult& result) {
  json doc{
      {"schema_version", 1},
      {"seed", result.seed},
      {"depth", result.depth},
      {"alpha", result.alpha},
      {"lambda_star", result.lambda_star},
      {"sample",
       json{{"delta", result.sample_report.delta},
            {"ci", json::array({result.sample_report.ci_lower,
                                result.sample_report.ci_upper})},
            {"significant", result.sample_report.significant}}},
      {"models",
       json::array(
           {json{{"algorithm", "cart"},
                 {"depth", result.depth},
                 {"lambda", nullptr},
                 {"train", eval_json(result.baseline_train_report)},
                 {"test", eval_json(result.baseline_report)}},
            json{{"algorithm", "fair_cart"},
                 {"depth", result.depth},
                 {"lambda", result.lambda_star},
                 {"train", eval_json(result.train_report)},
                 {"test", eval_json(result.test_report)}}})}};
  return doc.dump(2);
}

}  // namespace fairtree
