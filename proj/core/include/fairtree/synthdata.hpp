#pragma once

#include <cstdint>
#include <string>

#include "fairtree/dataset.hpp"

namespace fairtree {

// Synthetic data-generating process:
//
//   S   ~ Bernoulli(s_prob)
//   X_k ~ Normal(x_mean_base + x_mean_shift * S, x_sd),  k = 1,2,3
//   eta = eta_intercept + eta_x1sq * X1^2 + eta_sin * sin(X2 + X3)
//   Y   ~ Bernoulli(logistic(eta))
//
// S shifts the feature distribution but the outcome draw reads only eta, so
// Y is independent of S given X. S is exposed as the sensitive attribute,
// not as a feature column.
//
// Draws use one Rng stream per column (streams 0..4 for S, X1, X2, X3, Y),
// so the standard-normal increments of the X columns do not depend on the
// realized S values.
struct SynthConfig {
  std::size_t n = 2000;
  std::uint64_t seed = 0;
  double s_prob = 0.5;
  double x_mean_base = 0.0;
  double x_mean_shift = 1.1;
  double x_sd = 1.0;
  double eta_intercept = -1.0;
  double eta_x1sq = 0.8;
  double eta_sin = 0.8;
  bool sensitive_as_feature = false;  // include S as a fourth feature column
};

Dataset generate(const SynthConfig& config);

// CSV with header x1,x2,x3,s,y (plus the same column order regardless of
// sensitive_as_feature).
std::string synth_csv(const Dataset& data);

}  // namespace fairtree
