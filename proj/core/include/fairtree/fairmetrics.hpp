#pragma once

#include <string>
#include <vector>

namespace fairtree {

// Statistical parity of a set of binary predictions with respect to a binary
// sensitive attribute, together with its Wald confidence interval.
//
//   delta = p_priv - p_unpriv
//         = P[prediction=1 | sensitive=1] - P[prediction=1 | sensitive=0]
//
//   CI    = delta -/+ z_{alpha/2} * sqrt(p_priv(1-p_priv)/n_priv +
//                                        p_unpriv(1-p_unpriv)/n_unpriv)
//
// The interval is "significant" when it excludes zero; phi is then the
// minimum absolute distance of the interval endpoints from zero, clamped to
// [0,1] (Wald endpoints can exceed the [-1,1] range of delta itself).
struct FairnessReport {
  double delta = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double phi = 0.0;         // 0 whenever the CI covers zero
  bool significant = false; // true iff 0 is outside [ci_lower, ci_upper]
  long n_priv = 0;          // units with sensitive = 1
  long n_unpriv = 0;        // units with sensitive = 0
  double p_priv = 0.0;      // positive-prediction rate, privileged group
  double p_unpriv = 0.0;    // positive-prediction rate, unprivileged group
  double alpha = 0.05;
  bool defined = true;      // false when either group is empty
};

// z such that the standard normal upper-tail probability at z is alpha/2.
// Accurate to well below 1e-8 over (0, 1]; alpha = 1 maps to the median, 0.
// Throws std::invalid_argument outside that range.
double normal_quantile(double alpha);

// Statistical parity of predictions vs. the sensitive attribute at level
// alpha. Both vectors must be equal-length, nonempty, and {0,1}-valued.
// An empty group yields defined=false, delta=0, a degenerate (0,0) interval,
// significant=false, phi=0 (no disparity is measurable, none is asserted).
FairnessReport statistical_parity(const std::vector<int>& predictions,
                                  const std::vector<int>& sensitive,
                                  double alpha);

// Same computation from sufficient statistics: group sizes and the count of
// positive predictions in each group. The vector overload reduces to this.
FairnessReport statistical_parity_counts(long pos_priv, long n_priv,
                                         long pos_unpriv, long n_unpriv,
                                         double alpha);

// Fraction of positions where predictions equal target. Equal nonzero
// lengths required.
double accuracy(const std::vector<int>& predictions,
                const std::vector<int>& target);

// Report serialized as a JSON object with the field names of FairnessReport
// (ci bounds as "ci_lower"/"ci_upper"), full precision.
std::string report_json(const FairnessReport& report);

}  // namespace fairtree
