#pragma once

#include <optional>
#include <vector>

#include "fairtree/dataset.hpp"
#include "fairtree/fairmetrics.hpp"

namespace fairtree {

// A node's view of the training data: the dataset plus the row indices it
// contains.
struct NodeView {
  const Dataset* data = nullptr;
  std::vector<std::size_t> rows;

  std::size_t n() const { return rows.size(); }
  // Proportion of positive targets in the node.
  double p1() const;
};

// One (feature, threshold) proposal with its plain and fairness-penalized
// gains. Rows with feature value <= threshold go left.
struct SplitCandidate {
  int feature_index = -1;
  double threshold = 0.0;
  long n_left = 0;
  long n_right = 0;
  double ig = 0.0;          // information gain (Gini reduction), >= 0
  FairnessReport fairness;  // parity of the node's post-split predictions
  double ig_fair = 0.0;     // ig, or lambda*(1-phi)*ig when significant
  double lambda = 1.0;
};

// Gini impurity of a binary node, 2p(1-p). p must lie in [0,1].
double gini(double p);

// Information gain of splitting the node at (feature, threshold):
// G_v - (n_l/n_v) G_l - (n_r/n_v) G_r. Both children must be nonempty.
double information_gain(const NodeView& node, int feature_index, double threshold);

// Statistical parity of the node's units under the predictions induced by
// the split: every unit is predicted with the majority class of its child
// (ties predict 1). Computed over the node's units only.
FairnessReport node_parity_after_split(const NodeView& node, int feature_index,
                                       double threshold, double alpha);

// Fairness-penalized gain: ig when the disparity is not significant,
// lambda*(1-phi)*ig when it is. lambda must lie in [0,1].
double penalized_gain(double ig, const FairnessReport& fairness, double lambda);

// Every admissible candidate of the node: for each feature, thresholds at
// midpoints between consecutive distinct sorted values, discarding splits
// that would leave a child below min_leaf. Ordered by (feature, threshold)
// ascending.
std::vector<SplitCandidate> enumerate_candidates(const NodeView& node,
                                                 double lambda, double alpha,
                                                 int min_leaf);

// The candidate maximizing ig_fair; ties resolve to the lower feature index,
// then the lower threshold. Returns nullopt when no candidate has
// ig_fair > 0. Requires n >= 2*min_leaf.
std::optional<SplitCandidate> best_split(const NodeView& node, double lambda,
                                         double alpha, int min_leaf);

// Plain-CART selection: same enumeration and tie rule, maximizing ig and
// ignoring fairness entirely during the search. The winner still carries the
// split's parity as a diagnostic (with lambda fixed at 1). Returns nullopt
// when no candidate has ig > 0.
std::optional<SplitCandidate> best_split_plain(const NodeView& node,
                                               double alpha, int min_leaf);

}  // namespace fairtree
