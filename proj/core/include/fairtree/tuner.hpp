#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairtree/dataset.hpp"
#include "fairtree/fairmetrics.hpp"
#include "fairtree/tree.hpp"

namespace fairtree {

// One grid point of the lambda trade-off curve, measured on validation.
struct CurvePoint {
  double lambda = 0.0;
  double val_accuracy = 0.0;
  double val_delta = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  bool val_significant = false;
};

struct EvalReport {
  double accuracy = 0.0;
  FairnessReport fairness;
};

struct TuneResult {
  std::vector<CurvePoint> curve;  // one point per grid value, ascending
  double lambda_star = 1.0;
  TreeModel final_model;          // fair tree retrained on train+val at lambda_star
  TreeModel baseline_model;       // plain CART on train+val at the same depth
  EvalReport test_report;         // fair model, held-out test set
  EvalReport baseline_report;     // baseline, held-out test set
  EvalReport train_report;        // fair model, train+val
  EvalReport baseline_train_report;
  FairnessReport sample_report;   // observed-target parity of the full data
  int depth = 0;
  double alpha = 0.05;
  std::uint64_t seed = 0;
};

struct TuneOptions {
  std::vector<double> grid;  // nonempty, values in [0,1]; sorted ascending
  int depth = 0;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  double epsilon = 0.01;     // accuracy tolerance of the selection rule
  double train_fraction = 0.7;
  bool stratified = true;
  int min_leaf = 5;
  int min_split = 10;
};

// Default grid 0.00, 0.05, ..., 1.00.
std::vector<double> default_lambda_grid();

// Among points with val_significant=false, the highest-accuracy one (ties
// to the larger lambda); otherwise, among points within epsilon of the best
// accuracy, the one with minimal |val_delta| (ties to the larger lambda).
double select_lambda(const std::vector<CurvePoint>& curve, double epsilon);

// Grid search on an explicit train/test partition: inner 70/30 split of
// train_full (seeded with seed+1) gives the per-lambda training and
// validation parts; the final model is retrained on all of train_full at
// the selected lambda and evaluated once on test, alongside a plain-CART
// baseline at the same depth. The test part influences nothing before that
// final evaluation.
TuneResult tune_parts(const Dataset& train_full, const Dataset& test,
                      const TuneOptions& options);

// Convenience wrapper: 70/30 outer holdout of data (seeded with
// options.seed), then tune_parts.
TuneResult tune(const Dataset& data, const TuneOptions& options);

// Curve as CSV: header lambda,val_accuracy,val_delta,ci_lower,ci_upper,
// significant; one row per point, ascending lambda, significant as 0/1.
std::string curve_csv(const std::vector<CurvePoint>& curve);

// Result summary as JSON, mirroring the comparison-table layout
// (sample row plus one row per algorithm with train/test delta, CI,
// accuracy).
std::string summary_json(const TuneResult& result);

}  // namespace fairtree
