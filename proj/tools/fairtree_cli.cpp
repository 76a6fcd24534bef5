// Command-line front end: synthetic data generation, training, lambda
// tuning, evaluation, and batch prediction over CSV inputs.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairtree/dataset.hpp"
#include "fairtree/errors.hpp"
#include "fairtree/fairmetrics.hpp"
#include "fairtree/synthdata.hpp"
#include "fairtree/tree.hpp"
#include "fairtree/tuner.hpp"

namespace {

using fairtree::ConfigError;
using fairtree::DataError;
using nlohmann::json;

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open output file: " + path);
  out << content;
  if (!out) throw DataError("failed while writing: " + path);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      const double value = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      grid.push_back(value);
    } catch (const std::exception&) {
      throw ConfigError("--grid: cannot parse '" + item + "' as a number");
    }
  }
  if (grid.empty()) throw ConfigError("--grid: no values given");
  for (double value : grid) {
    if (!(value >= 0.0) || !(value <= 1.0)) {
      throw ConfigError("--grid: values must lie in [0,1]");
    }
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

json fairness_json(const fairtree::FairnessReport& report) {
  return json::parse(fairtree::report_json(report));
}

json eval_json(const fairtree::EvalReport& report) {
  return json{{"accuracy", report.accuracy}, {"fairness", fairness_json(report.fairness)}};
}

std::string ci_text(const fairtree::FairnessReport& report) {
  std::ostringstream out;
  out << "(" << report.ci_lower << ", " << report.ci_upper << ")";
  return out.str();
}

// Shared ingestion flags for commands that read a labeled CSV.
struct DataArgs {
  std::string data_path;
  std::string config_path;
};

void add_data_options(CLI::App* cmd, DataArgs& args) {
  cmd->add_option("--data", args.data_path, "input CSV file")->required();
  cmd->add_option("--config", args.config_path,
                  "column-role config JSON (columns: [{name, kind, ...}])")
      ->required();
}

fairtree::LoadResult load_labeled(const DataArgs& args) {
  const auto specs = fairtree::load_column_specs(args.config_path);
  fairtree::LoadResult loaded = fairtree::load_csv(args.data_path, specs);
  if (loaded.dropped_rows > 0) {
    std::cerr << "note: dropped " << loaded.dropped_rows
              << " rows with missing values\n";
  }
  return loaded;
}

struct GenSynthArgs {
  std::size_t n = 2000;
  std::uint64_t seed = 0;
  std::string out = "-";
  bool s_as_feature = false;
};

int cmd_gen_synth(const GenSynthArgs& args) {
  fairtree::SynthConfig config;
  config.n = args.n;
  config.seed = args.seed;
  config.sensitive_as_feature = args.s_as_feature;
  const fairtree::Dataset data = fairtree::generate(config);
  write_output(args.out, fairtree::synth_csv(data));
  std::cerr << "wrote " << data.n << " rows (seed " << args.seed << ")\n";
  return 0;
}

struct TrainArgs {
  DataArgs data;
  int depth = 0;
  double lambda = 1.0;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  double train_frac = 0.7;
  std::string stratify = "on";
  std::string fairness = "on";
  int min_leaf = 5;
  int min_split = 10;
  std::string model_out = "model.json";
  std::string report_out = "report.json";
};

json resolved_train_config(const TrainArgs& args) {
  return json{{"command", "train"},
              {"data", args.data.data_path},
              {"config", args.data.config_path},
              {"depth", args.depth},
              {"lambda", args.lambda},
              {"alpha", args.alpha},
              {"seed", args.seed},
              {"train_frac", args.train_frac},
              {"stratify", args.stratify},
              {"fairness", args.fairness},
              {"min_leaf", args.min_leaf},
              {"min_split", args.min_split},
              {"model_out", args.model_out},
              {"report_out", args.report_out}};
}

int cmd_train(const TrainArgs& args) {
  const fairtree::LoadResult loaded = load_labeled(args.data);

  fairtree::HoldoutPlan plan;
  plan.train_fraction = args.train_frac;
  plan.seed = args.seed;
  plan.stratified = args.stratify == "on";
  const fairtree::HoldoutSplit split = fairtree::holdout_split(loaded.data, plan);

  fairtree::GrowConfig config;
  config.lambda = args.lambda;
  config.alpha = args.alpha;
  config.max_depth = args.depth;
  config.min_leaf = args.min_leaf;
  config.min_split = args.min_split;
  config.fairness_enabled = args.fairness == "on";
  const fairtree::TreeModel model = fairtree::grow(split.train, config);

  const auto train_pred = fairtree::predict(model, split.train);
  const auto test_pred = fairtree::predict(model, split.test);
  fairtree::EvalReport train_report;
  train_report.accuracy = fairtree::accuracy(train_pred, split.train.target);
  train_report.fairness =
      fairtree::statistical_parity(train_pred, split.train.sensitive, args.alpha);
  fairtree::EvalReport test_report;
  test_report.accuracy = fairtree::accuracy(test_pred, split.test.target);
  test_report.fairness =
      fairtree::statistical_parity(test_pred, split.test.sensitive, args.alpha);
  const fairtree::FairnessReport sample = fairtree::statistical_parity(
      loaded.data.target, loaded.data.sensitive, args.alpha);

  const json report{{"schema_version", 1},
                    {"config", resolved_train_config(args)},
                    {"data",
                     json{{"n", loaded.data.n},
                          {"dropped_rows", loaded.dropped_rows},
                          {"n_train", split.train.n},
                          {"n_test", split.test.n},
                          {"feature_names", loaded.data.feature_names}}},
                    {"sample", fairness_json(sample)},
                    {"train", eval_json(train_report)},
                    {"test", eval_json(test_report)}};

  write_output(args.model_out, fairtree::serialize(model));
  write_output(args.report_out, report.dump(2));

  std::cout << "train: acc " << train_report.accuracy << ", delta "
            << train_report.fairness.delta << " CI "
            << ci_text(train_report.fairness) << "\n";
  std::cout << "test:  acc " << test_report.accuracy << ", delta "
            << test_report.fairness.delta << " CI " << ci_text(test_report.fairness)
            << "\n";
  return 0;
}

struct TuneArgs {
  DataArgs data;
  int depth = 0;
  std::string grid_text;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  double epsilon = 0.01;
  double train_frac = 0.7;
  std::string stratify = "on";
  int min_leaf = 5;
  int min_split = 10;
  std::string curve_out = "curve.csv";
  std::string model_out = "model.json";
  std::string summary_out = "summary.json";
};

int cmd_tune(const TuneArgs& args) {
  const fairtree::LoadResult loaded = load_labeled(args.data);

  fairtree::TuneOptions options;
  options.grid =
      args.grid_text.empty() ? fairtree::default_lambda_grid() : parse_grid(args.grid_text);
  options.depth = args.depth;
  options.alpha = args.alpha;
  options.seed = args.seed;
  options.epsilon = args.epsilon;
  options.train_fraction = args.train_frac;
  options.stratified = args.stratify == "on";
  options.min_leaf = args.min_leaf;
  options.min_split = args.min_split;

  const fairtree::TuneResult result = fairtree::tune(loaded.data, options);

  json summary = json::parse(fairtree::summary_json(result));
  summary["config"] = json{{"command", "tune"},
                           {"data", args.data.data_path},
                           {"config", args.data.config_path},
                           {"depth", args.depth},
                           {"grid", options.grid},
                           {"alpha", args.alpha},
                           {"seed", args.seed},
                           {"epsilon", args.epsilon},
                           {"train_frac", args.train_frac},
                           {"stratify", args.stratify},
                           {"min_leaf", args.min_leaf},
                           {"min_split", args.min_split},
                           {"curve_out", args.curve_out},
                           {"model_out", args.model_out},
                           {"summary_out", args.summary_out},
                           {"dropped_rows", loaded.dropped_rows}};

  write_output(args.curve_out, fairtree::curve_csv(result.curve));
  write_output(args.model_out, fairtree::serialize(result.final_model));
  write_output(args.summary_out, summary.dump(2));

  std::cout << "lambda* = " << result.lambda_star << "\n";
  std::cout << "sample    delta " << result.sample_report.delta << " CI "
            << ci_text(result.sample_report) << "\n";
  std::cout << "cart      train acc " << result.baseline_train_report.accuracy
            << ", delta " << result.baseline_train_report.fairness.delta
            << " | test acc " << result.baseline_report.accuracy << ", delta "
            << result.baseline_report.fairness.delta << " CI "
            << ci_text(result.baseline_report.fairness) << "\n";
  std::cout << "fair-cart train acc " << result.train_report.accuracy << ", delta "
            << result.train_report.fairness.delta << " | test acc "
            << result.test_report.accuracy << ", delta "
            << result.test_report.fairness.delta << " CI "
            << ci_text(result.test_report.fairness) << "\n";
  return 0;
}

struct EvaluateArgs {
  DataArgs data;
  std::string model_path;
  double alpha = 0.05;
  std::string report_out = "-";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int cmd_evaluate(const EvaluateArgs& args) {
  const fairtree::TreeModel model = fairtree::deserialize(read_file(args.model_path));
  const fairtree::LoadResult loaded = load_labeled(args.data);
  if (loaded.data.feature_names != model.feature_names) {
    throw DataError("CSV feature schema does not match the model");
  }

  const auto predictions = fairtree::predict(model, loaded.data);
  fairtree::EvalReport report;
  report.accuracy = fairtree::accuracy(predictions, loaded.data.target);
  report.fairness =
      fairtree::statistical_parity(predictions, loaded.data.sensitive, args.alpha);

  const json doc{{"schema_version", 1},
                 {"config",
                  json{{"command", "evaluate"},
                       {"model", args.model_path},
                       {"data", args.data.data_path},
                       {"config", args.data.config_path},
                       {"alpha", args.alpha},
                       {"report_out", args.report_out}}},
                 {"data", json{{"n", loaded.data.n}, {"dropped_rows", loaded.dropped_rows}}},
                 {"evaluation", eval_json(report)}};
  write_output(args.report_out, doc.dump(2) + "\n");
  return 0;
}

struct PredictArgs {
  DataArgs data;
  std::string model_path;
  std::string out = "-";
};

int cmd_predict(const PredictArgs& args) {
  const fairtree::TreeModel model = fairtree::deserialize(read_file(args.model_path));
  const auto specs = fairtree::load_column_specs(args.data.config_path);
  const auto columns =
      fairtree::load_feature_matrix(args.data.data_path, specs, model.feature_names);
  const auto predictions = fairtree::predict(model, columns);

  std::ostringstream out;
  out << "prediction\n";
  for (int label : predictions) out << label << "\n";
  write_output(args.out, out.str());
  return 0;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Fairness-penalized decision trees over CSV data"};
  app.require_subcommand(1);

  GenSynthArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen-synth", "write a synthetic dataset CSV");
  gen->add_option("--n", gen_args.n, "number of rows")->default_val(2000);
  gen->add_option("--seed", gen_args.seed, "generator seed")->default_val(0);
  gen->add_option("--out", gen_args.out, "output CSV path, - for stdout");
  gen->add_flag("--s-as-feature", gen_args.s_as_feature,
                "also expose the sensitive column as a feature");

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "fit a single tree");
  add_data_options(train, train_args.data);
  train->add_option("--depth", train_args.depth, "maximum tree depth")->required();
  train->add_option("--lambda", train_args.lambda,
                    "penalty scale in [0,1]; default 1 (gentlest)");
  train->add_option("--alpha", train_args.alpha, "CI level")->default_val(0.05);
  train->add_option("--seed", train_args.seed, "holdout seed")->default_val(0);
  train->add_option("--train-frac", train_args.train_frac, "training fraction")
      ->default_val(0.7);
  train->add_option("--stratify", train_args.stratify, "stratified holdout")
      ->check(CLI::IsMember({"on", "off"}))
      ->default_val("on");
  train->add_option("--fairness", train_args.fairness, "penalized or plain gain")
      ->check(CLI::IsMember({"on", "off"}))
      ->default_val("on");
  train->add_option("--min-leaf", train_args.min_leaf, "smallest child size")
      ->default_val(5);
  train->add_option("--min-split", train_args.min_split, "smallest splittable node")
      ->default_val(10);
  train->add_option("--model-out", train_args.model_out, "model JSON path");
  train->add_option("--report-out", train_args.report_out, "report JSON path");

  TuneArgs tune_args;
  CLI::App* tune = app.add_subcommand("tune", "grid-search lambda and retrain");
  add_data_options(tune, tune_args.data);
  tune->add_option("--depth", tune_args.depth, "maximum tree depth")->required();
  tune->add_option("--grid", tune_args.grid_text,
                   "comma-separated lambda values; default 0,0.05,...,1");
  tune->add_option("--alpha", tune_args.alpha, "CI level")->default_val(0.05);
  tune->add_option("--seed", tune_args.seed, "holdout seed")->default_val(0);
  tune->add_option("--epsilon", tune_args.epsilon,
                   "accuracy tolerance of the selection rule")
      ->default_val(0.01);
  tune->add_option("--train-frac", tune_args.train_frac, "training fraction")
      ->default_val(0.7);
  tune->add_option("--stratify", tune_args.stratify, "stratified holdout")
      ->check(CLI::IsMember({"on", "off"}))
      ->default_val("on");
  tune->add_option("--min-leaf", tune_args.min_leaf, "smallest child size")
      ->default_val(5);
  tune->add_option("--min-split", tune_args.min_split, "smallest splittable node")
      ->default_val(10);
  tune->add_option("--curve-out", tune_args.curve_out, "trade-off curve CSV path");
  tune->add_option("--model-out", tune_args.model_out, "final model JSON path");
  tune->add_option("--summary-out", tune_args.summary_out, "summary JSON path");

  EvaluateArgs eval_args;
  CLI::App* evaluate = app.add_subcommand("evaluate", "score a model on labeled data");
  add_data_options(evaluate, eval_args.data);
  evaluate->add_option("--model", eval_args.model_path, "model JSON path")->required();
  evaluate->add_option("--alpha", eval_args.alpha, "CI level")->default_val(0.05);
  evaluate->add_option("--report-out", eval_args.report_out,
                       "report JSON path, - for stdout");

  PredictArgs predict_args;
  CLI::App* predict = app.add_subcommand("predict", "label unlabeled rows");
  add_data_options(predict, predict_args.data);
  predict->add_option("--model", predict_args.model_path, "model JSON path")->required();
  predict->add_option("--out", predict_args.out, "prediction CSV path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  if (gen->parsed()) return cmd_gen_synth(gen_args);
  if (train->parsed()) return cmd_train(train_args);
  if (tune->parsed()) return cmd_tune(tune_args);
  if (evaluate->parsed()) return cmd_evaluate(eval_args);
  return cmd_predict(predict_args);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << json{{"error", {{"kind", "config"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << json{{"error", {{"kind", "data"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump()
              << "\n";
    return 4;
  }
}
