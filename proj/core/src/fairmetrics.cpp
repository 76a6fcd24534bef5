#include "fairtree/fairmetrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace fairtree {

namespace {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Acklam's rational approximation of the standard normal inverse CDF,
// followed by one Halley refinement against erfc. Absolute error is far
// below 1e-12 across (0,1).
double inverse_normal_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

void check_binary(const std::vector<int>& values, const char* what) {
  for (int value : values) {
    if (value != 0 && value != 1) {
      throw std::invalid_argument(std::string(what) + " must be 0/1-valued");
    }
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie strictly between 0 and 1");
  }
}

}  // namespace

double normal_quantile(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
  return -inverse_normal_cdf(alpha / 2.0);
}

FairnessReport statistical_parity_counts(long pos_priv, long n_priv,
                                         long pos_unpriv, long n_unpriv,
                                         double alpha) {
  check_alpha(alpha);
  if (n_priv < 0 || n_unpriv < 0 || pos_priv < 0 || pos_unpriv < 0 ||
      pos_priv > n_priv || pos_unpriv > n_unpriv) {
    throw std::invalid_argument("inconsistent parity counts");
  }

  FairnessReport report;
  report.alpha = alpha;
  report.n_priv = n_priv;
  report.n_unpriv = n_unpriv;
  if (n_priv == 0 || n_unpriv == 0) {
    report.defined = false;
    return report;
  }

  const double p11 = static_cast<double>(pos_priv) / static_cast<double>(n_priv);
  const double p10 = static_cast<double>(pos_unpriv) / static_cast<double>(n_unpriv);
  report.p_priv = p11;
  report.p_unpriv = p10;
  report.delta = p11 - p10;

  const double se = std::sqrt(p11 * (1.0 - p11) / static_cast<double>(n_priv) +
                              p10 * (1.0 - p10) / static_cast<double>(n_unpriv));
  const double z = normal_quantile(alpha);
  report.ci_lower = report.delta - z * se;
  report.ci_upper = report.delta + z * se;
  report.significant = report.ci_lower > 0.0 || report.ci_upper < 0.0;
  if (report.significant) {
    const double margin =
        std::min(std::fabs(report.ci_lower), std::fabs(report.ci_upper));
    report.phi = std::min(margin, 1.0);
  }
  return report;
}

FairnessReport statistical_parity(const std::vector<int>& predictions,
                                  const std::vector<int>& sensitive,
                                  double alpha) {
  if (predictions.empty() || predictions.size() != sensitive.size()) {
    throw std::invalid_argument(
        "predictions and sensitive must be nonempty and equal-length");
  }
  check_binary(predictions, "predictions");
  check_binary(sensitive, "sensitive");

  long n_priv = 0, n_unpriv = 0, pos_priv = 0, pos_unpriv = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (sensitive[i] == 1) {
      ++n_priv;
      pos_priv += predictions[i];
    } else {
      ++n_unpriv;
      pos_unpriv += predictions[i];
    }
  }
  return statistical_parity_counts(pos_priv, n_priv, pos_unpriv, n_unpriv, alpha);
}

double accuracy(const std::vector<int>& predictions,
                const std::vector<int>& target) {
  if (predictions.empty() || predictions.size() != target.size()) {
    throw std::invalid_argument(
        "predictions and target must be nonempty and equal-length");
  }
  long correct = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i] == target[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

std::string report_json(const FairnessReport& report) {
  nlohmann::json doc{{"defined", report.defined},
                     {"delta", report.delta},
                     {"ci_lower", report.ci_lower},
                     {"ci_upper", report.ci_upper},
                     {"phi", report.phi},
                     {"significant", report.significant},
                     {"n_priv", report.n_priv},
                     {"n_unpriv", report.n_unpriv},
                     {"p_priv", report.p_priv},
                     {"p_unpriv", report.p_unpriv},
                     {"alpha", report.alpha}};
  return doc.dump();
}

}  // namespace fairtree
