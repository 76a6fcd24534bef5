#include "fairtree/synthdata.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "fairtree/errors.hpp"
#include "fairtree/rng.hpp"

namespace fairtree {

namespace {

// The outcome draw deliberately takes eta alone: S can influence Y only
// through the features entering eta.
int draw_outcome(Rng& rng, double eta) {
  const double p = 1.0 / (1.0 + std::exp(-eta));
  return rng.bernoulli(p) ? 1 : 0;
}

std::string number_repr(double value) { return nlohmann::json(value).dump(); }

}  // namespace

Dataset generate(const SynthConfig& config) {
  if (config.n < 1) throw ConfigError("synthetic dataset needs n >= 1");
  if (!(config.s_prob >= 0.0) || !(config.s_prob <= 1.0)) {
    throw ConfigError("s_prob must lie in [0,1]");
  }
  if (!(config.x_sd > 0.0)) throw ConfigError("x_sd must be positive");

  Rng s_rng(config.seed, 0);
  Rng x_rng[3] = {Rng(config.seed, 1), Rng(config.seed, 2), Rng(config.seed, 3)};
  Rng y_rng(config.seed, 4);

  Dataset data;
  data.n = config.n;
  data.sensitive.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    data.sensitive.push_back(s_rng.bernoulli(config.s_prob) ? 1 : 0);
  }

  data.columns.resize(3);
  data.feature_names = {"x1", "x2", "x3"};
  for (std::size_t k = 0; k < 3; ++k) {
    data.columns[k].reserve(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
      const double mean =
          config.x_mean_base + config.x_mean_shift * data.sensitive[i];
      data.columns[k].push_back(x_rng[k].normal(mean, config.x_sd));
    }
  }

  data.target.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    const double eta = config.eta_intercept +
                       config.eta_x1sq * data.columns[0][i] * data.columns[0][i] +
                       config.eta_sin * std::sin(data.columns[1][i] + data.columns[2][i]);
    data.target.push_back(draw_outcome(y_rng, eta));
  }

  if (config.sensitive_as_feature) {
    std::vector<double> s_column;
    s_column.reserve(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
      s_column.push_back(static_cast<double>(data.sensitive[i]));
    }
    data.columns.push_back(std::move(s_column));
    data.feature_names.push_back("s");
  }
  return data;
}

std::string synth_csv(const Dataset& data) {
  if (data.feature_count() < 3 || data.sensitive.size() != data.n ||
      data.target.size() != data.n) {
    throw std::invalid_argument("synth_csv: dataset does not look synthetic");
  }
  std::ostringstream out;
  out << "x1,x2,x3,s,y\n";
  for (std::size_t i = 0; i < data.n; ++i) {
    out << number_repr(data.columns[0][i]) << ',' << number_repr(data.columns[1][i])
        << ',' << number_repr(data.columns[2][i]) << ',' << data.sensitive[i]
        << ',' << data.target[i] << '\n';
  }
  return out.str();
}

}  // namespace fairtree
