#pragma once

// Reference implementations the tests compare against. Everything here is
// written directly from the definitions (long-double bisection, per-candidate
// re-partitioning) rather than by calling the code under test; the one
// deliberate exception is noted at brute_force_candidates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "fairtree/dataset.hpp"
#include "fairtree/fairmetrics.hpp"

namespace oracles {

// Standard normal upper alpha/2 quantile via bisection on erfcl. About 64
// correct bits; used as the independent check of normal_quantile.
inline long double bisect_normal_quantile(long double alpha) {
  const long double target = 1.0L - alpha / 2.0L;  // Phi(z) = target
  long double lo = -15.0L, hi = 15.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2.0L;
    const long double cdf = 0.5L * erfcl(-mid / sqrtl(2.0L));
    if (cdf < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2.0L;
}

struct WaldReference {
  bool defined = true;
  long double delta = 0.0L;
  long double lo = 0.0L;
  long double hi = 0.0L;
  long double phi = 0.0L;
  bool significant = false;
};

// Wald interval for a difference of two proportions, entirely in long double.
inline WaldReference wald_reference(long pos_priv, long n_priv, long pos_unpriv,
                                    long n_unpriv, long double alpha) {
  WaldReference ref;
  if (n_priv == 0 || n_unpriv == 0) {
    ref.defined = false;
    return ref;
  }
  const long double p1 = static_cast<long double>(pos_priv) / n_priv;
  const long double p0 = static_cast<long double>(pos_unpriv) / n_unpriv;
  ref.delta = p1 - p0;
  const long double se =
      sqrtl(p1 * (1.0L - p1) / n_priv + p0 * (1.0L - p0) / n_unpriv);
  const long double z = bisect_normal_quantile(alpha);
  ref.lo = ref.delta - z * se;
  ref.hi = ref.delta + z * se;
  ref.significant = ref.lo > 0.0L || ref.hi < 0.0L;
  if (ref.significant) {
    ref.phi = std::min(std::min(fabsl(ref.lo), fabsl(ref.hi)), 1.0L);
  }
  return ref;
}

struct BruteCandidate {
  int feature = -1;
  double threshold = 0.0;
  long n_left = 0;
  long n_right = 0;
  double ig = 0.0;
  double ig_fair = 0.0;
  double phi = 0.0;
  bool significant = false;
  bool defined = true;
};

// Exhaustive per-candidate evaluation: thresholds at midpoints of consecutive
// distinct sorted values, each candidate scored by re-partitioning the whole
// node from scratch. The z value is taken from fairtree::normal_quantile (a
// shared constant, itself verified against bisect_normal_quantile elsewhere);
// all other arithmetic is re-derived here so that sweep bookkeeping bugs in
// the library cannot cancel out.
inline std::vector<BruteCandidate> brute_force_candidates(
    const fairtree::Dataset& data, const std::vector<std::size_t>& rows,
    double lambda, double alpha, int min_leaf) {
  std::vector<BruteCandidate> out;
  const double z = fairtree::normal_quantile(alpha);
  const long n = static_cast<long>(rows.size());

  for (std::size_t j = 0; j < data.feature_count(); ++j) {
    std::vector<double> values;
    values.reserve(rows.size());
    for (std::size_t i : rows) values.push_back(data.columns[j][i]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
      const double a = values[k], b = values[k + 1];
      double t = (a + b) / 2.0;
      if (!(t >= a) || t >= b) t = a;

      long n_l = 0, pos_l = 0, s1_l = 0, pos_r = 0, s1_r = 0, pos = 0, s1 = 0;
      for (std::size_t i : rows) {
        pos += data.target[i];
        s1 += data.sensitive[i];
        if (data.columns[j][i] <= t) {
          ++n_l;
          pos_l += data.target[i];
          s1_l += data.sensitive[i];
        } else {
          pos_r += data.target[i];
          s1_r += data.sensitive[i];
        }
      }
      const long n_r = n - n_l;
      if (n_l < min_leaf || n_r < min_leaf) continue;

      BruteCandidate cand;
      cand.feature = static_cast<int>(j);
      cand.threshold = t;
      cand.n_left = n_l;
      cand.n_right = n_r;

      const double p = static_cast<double>(pos) / static_cast<double>(n);
      const double pl = static_cast<double>(pos_l) / static_cast<double>(n_l);
      const double pr = static_cast<double>(pos_r) / static_cast<double>(n_r);
      const double g = 2.0 * p * (1.0 - p);
      const double gl = 2.0 * pl * (1.0 - pl);
      const double gr = 2.0 * pr * (1.0 - pr);
      cand.ig = std::max(0.0, g - (static_cast<double>(n_l) / static_cast<double>(n)) * gl -
                                  (static_cast<double>(n_r) / static_cast<double>(n)) * gr);

      const int label_l = 2 * pos_l >= n_l ? 1 : 0;
      const int label_r = 2 * pos_r >= n_r ? 1 : 0;
      const long s0 = n - s1;
      if (s1 == 0 || s0 == 0) {
        cand.defined = false;
        cand.significant = false;
      } else {
        long pred_pos_priv = 0, pred_pos_unpriv = 0;
        if (label_l == 1) {
          pred_pos_priv += s1_l;
          pred_pos_unpriv += n_l - s1_l;
        }
        if (label_r == 1) {
          pred_pos_priv += s1_r;
          pred_pos_unpriv += n_r - s1_r;
        }
        const double p11 = static_cast<double>(pred_pos_priv) / static_cast<double>(s1);
        const double p10 = static_cast<double>(pred_pos_unpriv) / static_cast<double>(s0);
        const double delta = p11 - p10;
        const double se = std::sqrt(p11 * (1.0 - p11) / static_cast<double>(s1) +
                                    p10 * (1.0 - p10) / static_cast<double>(s0));
        const double lo = delta - z * se;
        const double hi = delta + z * se;
        cand.significant = lo > 0.0 || hi < 0.0;
        if (cand.significant) {
          cand.phi = std::min(std::min(std::fabs(lo), std::fabs(hi)), 1.0);
        }
      }
      cand.ig_fair = cand.significant ? lambda * (1.0 - cand.phi) * cand.ig : cand.ig;
      out.push_back(cand);
    }
  }
  return out;
}

// Argmax under the library's documented tie rule: best key wins, ties to the
// lower feature index then the lower threshold; none when no key is positive.
inline std::optional<BruteCandidate> brute_force_best(
    const fairtree::Dataset& data, const std::vector<std::size_t>& rows,
    double lambda, double alpha, int min_leaf, bool fair_key = true) {
  std::optional<BruteCandidate> best;
  for (const BruteCandidate& cand :
       brute_force_candidates(data, rows, lambda, alpha, min_leaf)) {
    const double key = fair_key ? cand.ig_fair : cand.ig;
    const double best_key = best ? (fair_key ? best->ig_fair : best->ig) : 0.0;
    if (!best || key > best_key) best = cand;
  }
  if (!best || !((fair_key ? best->ig_fair : best->ig) > 0.0)) return std::nullopt;
  return best;
}

}  // namespace oracles
