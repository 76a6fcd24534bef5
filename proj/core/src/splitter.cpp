#include "fairtree/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairtree {

namespace {

struct SortedFeature {
  std::vector<double> values;
  std::vector<int> y;
  std::vector<int> s;
};

SortedFeature sort_by_feature(const NodeView& node, int feature_index) {
  const auto& column = node.data->columns[static_cast<std::size_t>(feature_index)];
  std::vector<std::size_t> order(node.rows);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return column[a] < column[b];
  });

  SortedFeature sorted;
  sorted.values.reserve(order.size());
  sorted.y.reserve(order.size());
  sorted.s.reserve(order.size());
  for (std::size_t i : order) {
    sorted.values.push_back(column[i]);
    sorted.y.push_back(node.data->target[i]);
    sorted.s.push_back(node.data->sensitive[i]);
  }
  return sorted;
}

// Threshold between adjacent distinct values a < b, placed so that the
// routing rule x <= t reproduces the sweep partition even when the midpoint
// rounds onto b or the sum overflows.
double midpoint_threshold(double a, double b) {
  double t = (a + b) / 2.0;
  if (!(t >= a) || t >= b) t = a;
  return t;
}

double gini_from_counts(long n, long pos) {
  const double p = static_cast<double>(pos) / static_cast<double>(n);
  return 2.0 * p * (1.0 - p);
}

double ig_from_counts(long n, long pos, long n_left, long pos_left) {
  const long n_right = n - n_left;
  const long pos_right = pos - pos_left;
  const double g_v = gini_from_counts(n, pos);
  const double g_l = gini_from_counts(n_left, pos_left);
  const double g_r = gini_from_counts(n_right, pos_right);
  const double nv = static_cast<double>(n);
  return std::max(0.0, g_v - (static_cast<double>(n_left) / nv) * g_l -
                           (static_cast<double>(n_right) / nv) * g_r);
}

FairnessReport parity_from_counts(long n_left, long pos_left, long s1_left,
                                  long n_right, long pos_right, long s1_right,
                                  double alpha) {
  const int left_label = 2 * pos_left >= n_left ? 1 : 0;
  const int right_label = 2 * pos_right >= n_right ? 1 : 0;

  const long n_priv = s1_left + s1_right;
  const long n_unpriv = (n_left - s1_left) + (n_right - s1_right);
  long pos_priv = 0, pos_unpriv = 0;
  if (left_label == 1) {
    pos_priv += s1_left;
    pos_unpriv += n_left - s1_left;
  }
  if (right_label == 1) {
    pos_priv += s1_right;
    pos_unpriv += n_right - s1_right;
  }
  return statistical_parity_counts(pos_priv, n_priv, pos_unpriv, n_unpriv, alpha);
}

void check_node(const NodeView& node) {
  if (node.data == nullptr) throw std::invalid_argument("node has no dataset");
  if (node.rows.empty()) throw std::invalid_argument("node has no rows");
}

void check_feature(const NodeView& node, int feature_index) {
  if (feature_index < 0 ||
      static_cast<std::size_t>(feature_index) >= node.data->feature_count()) {
    throw std::invalid_argument("feature index out of range");
  }
}

struct SplitCounts {
  long n_left = 0, pos_left = 0, s1_left = 0;
  long n_right = 0, pos_right = 0, s1_right = 0;
};

SplitCounts partition_counts(const NodeView& node, int feature_index,
                             double threshold) {
  const auto& column = node.data->columns[static_cast<std::size_t>(feature_index)];
  SplitCounts counts;
  for (std::size_t i : node.rows) {
    if (column[i] <= threshold) {
      ++counts.n_left;
      counts.pos_left += node.data->target[i];
      counts.s1_left += node.data->sensitive[i];
    } else {
      ++counts.n_right;
      counts.pos_right += node.data->target[i];
      counts.s1_right += node.data->sensitive[i];
    }
  }
  if (counts.n_left == 0 || counts.n_right == 0) {
    throw std::invalid_argument("degenerate split: a child is empty");
  }
  return counts;
}

// Walks every admissible (feature, threshold) pair of the node in ascending
// (feature, threshold) order. The visitor receives the running counts; plain
// information gain is precomputed since every caller needs it.
template <typename Visit>
void sweep(const NodeView& node, int min_leaf, Visit&& visit) {
  check_node(node);
  if (min_leaf < 1) throw std::invalid_argument("min_leaf must be >= 1");

  const long n = static_cast<long>(node.n());
  const std::size_t feature_count = node.data->feature_count();
  for (std::size_t j = 0; j < feature_count; ++j) {
    const SortedFeature sorted = sort_by_feature(node, static_cast<int>(j));
    long pos_total = 0, s1_total = 0;
    for (std::size_t i = 0; i < sorted.y.size(); ++i) {
      pos_total += sorted.y[i];
      s1_total += sorted.s[i];
    }

    long n_left = 0, pos_left = 0, s1_left = 0;
    for (std::size_t i = 0; i + 1 < sorted.values.size(); ++i) {
      ++n_left;
      pos_left += sorted.y[i];
      s1_left += sorted.s[i];
      if (!(sorted.values[i] < sorted.values[i + 1])) continue;
      const long n_right = n - n_left;
      if (n_left < min_leaf || n_right < min_leaf) continue;

      SplitCandidate candidate;
      candidate.feature_index = static_cast<int>(j);
      candidate.threshold = midpoint_threshold(sorted.values[i], sorted.values[i + 1]);
      candidate.n_left = n_left;
      candidate.n_right = n_right;
      candidate.ig = ig_from_counts(n, pos_total, n_left, pos_left);
      visit(candidate, pos_left, s1_left, pos_total - pos_left, s1_total - s1_left);
    }
  }
}

}  // namespace

double NodeView::p1() const {
  check_node(*this);
  long pos = 0;
  for (std::size_t i : rows) pos += data->target[i];
  return static_cast<double>(pos) / static_cast<double>(rows.size());
}

double gini(double p) {
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw std::invalid_argument("gini: p must lie in [0,1]");
  }
  return 2.0 * p * (1.0 - p);
}

double information_gain(const NodeView& node, int feature_index, double threshold) {
  check_node(node);
  check_feature(node, feature_index);
  const SplitCounts counts = partition_counts(node, feature_index, threshold);
  const long n = counts.n_left + counts.n_right;
  const long pos = counts.pos_left + counts.pos_right;
  return ig_from_counts(n, pos, counts.n_left, counts.pos_left);
}

FairnessReport node_parity_after_split(const NodeView& node, int feature_index,
                                       double threshold, double alpha) {
  check_node(node);
  check_feature(node, feature_index);
  const SplitCounts counts = partition_counts(node, feature_index, threshold);
  return parity_from_counts(counts.n_left, counts.pos_left, counts.s1_left,
                            counts.n_right, counts.pos_right, counts.s1_right,
                            alpha);
}

double penalized_gain(double ig, const FairnessReport& fairness, double lambda) {
  if (!(ig >= 0.0)) throw std::invalid_argument("penalized_gain: ig must be >= 0");
  if (!(lambda >= 0.0) || !(lambda <= 1.0)) {
    throw std::invalid_argument("penalized_gain: lambda must lie in [0,1]");
  }
  if (!fairness.significant) return ig;
  return lambda * (1.0 - fairness.phi) * ig;
}

std::vector<SplitCandidate> enumerate_candidates(const NodeView& node,
                                                 double lambda, double alpha,
                                                 int min_leaf) {
  std::vector<SplitCandidate> candidates;
  sweep(node, min_leaf,
        [&](SplitCandidate& candidate, long pos_left, long s1_left,
            long pos_right, long s1_right) {
          candidate.lambda = lambda;
          candidate.fairness = parity_from_counts(
              candidate.n_left, pos_left, s1_left, candidate.n_right, pos_right,
              s1_right, alpha);
          candidate.ig_fair = penalized_gain(candidate.ig, candidate.fairness, lambda);
          candidates.push_back(candidate);
        });
  return candidates;
}

std::optional<SplitCandidate> best_split(const NodeView& node, double lambda,
                                         double alpha, int min_leaf) {
  check_node(node);
  if (node.n() < 2 * static_cast<std::size_t>(min_leaf)) {
    throw std::invalid_argument("best_split: node smaller than 2*min_leaf");
  }
  std::optional<SplitCandidate> best;
  sweep(node, min_leaf,
        [&](SplitCandidate& candidate, long pos_left, long s1_left,
            long pos_right, long s1_right) {
          candidate.lambda = lambda;
          candidate.fairness = parity_from_counts(
              candidate.n_left, pos_left, s1_left, candidate.n_right, pos_right,
              s1_right, alpha);
          candidate.ig_fair = penalized_gain(candidate.ig, candidate.fairness, lambda);
          if (!best || candidate.ig_fair > best->ig_fair) best = candidate;
        });
  if (!best || !(best->ig_fair > 0.0)) return std::nullopt;
  return best;
}

std::optional<SplitCandidate> best_split_plain(const NodeView& node,
                                               double alpha, int min_leaf) {
  check_node(node);
  if (node.n() < 2 * static_cast<std::size_t>(min_leaf)) {
    throw std::invalid_argument("best_split_plain: node smaller than 2*min_leaf");
  }
  std::optional<SplitCandidate> best;
  sweep(node, min_leaf,
        [&](SplitCandidate& candidate, long, long, long, long) {
          if (!best || candidate.ig > best->ig) best = candidate;
        });
  if (!best || !(best->ig > 0.0)) return std::nullopt;
  best->lambda = 1.0;
  best->fairness =
      node_parity_after_split(node, best->feature_index, best->threshold, alpha);
  best->ig_fair = penalized_gain(best->ig, best->fairness, 1.0);
  return best;
}

}  // namespace fairtree
