#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fairtree/dataset.hpp"
#include "fairtree/errors.hpp"
#include "fairtree/synthdata.hpp"
#include "testutil.hpp"

using fairtree::Dataset;
using fairtree::SynthConfig;

namespace {

// E[logistic(-1 + 0.8 X1^2 + 0.8 sin(X2+X3)) | S=s] by tensor quadrature:
// X1 = 1.1 s + u and X2+X3 = 2.2 s + sqrt(2) v with u,v standard normal.
// Midpoint rule on [-9,9]^2 is accurate far beyond the tolerance used here.
long double positive_rate_given_s(int s) {
  const long double mean_x1 = 1.1L * s;
  const long double mean_w = 2.2L * s;
  const long double sd_w = sqrtl(2.0L);
  const int steps = 1200;
  const long double lo = -9.0L, hi = 9.0L;
  const long double h = (hi - lo) / steps;
  const long double inv_sqrt_2pi = 0.39894228040143267793994605993438L;

  long double total = 0.0L;
  for (int i = 0; i < steps; ++i) {
    const long double u = lo + (i + 0.5L) * h;
    const long double wu = inv_sqrt_2pi * expl(-0.5L * u * u) * h;
    const long double x1 = mean_x1 + u;
    const long double quad = 0.8L * x1 * x1;
    for (int j = 0; j < steps; ++j) {
      const long double v = lo + (j + 0.5L) * h;
      const long double wv = inv_sqrt_2pi * expl(-0.5L * v * v) * h;
      const long double w = mean_w + sd_w * v;
      const long double eta = -1.0L + quad + 0.8L * sinl(w);
      total += wu * wv / (1.0L + expl(-eta));
    }
  }
  return total;
}

}  // namespace

TEST_CASE("generation is bitwise reproducible") {
  SynthConfig config;
  config.n = 500;
  config.seed = 11;
  const Dataset a = fairtree::generate(config);
  const Dataset b = fairtree::generate(config);
  CHECK(a.columns == b.columns);
  CHECK(a.sensitive == b.sensitive);
  CHECK(a.target == b.target);

  config.seed = 12;
  const Dataset c = fairtree::generate(config);
  CHECK(a.columns != c.columns);
}

TEST_CASE("shape and naming") {
  SynthConfig config;
  config.n = 64;
  const Dataset data = fairtree::generate(config);
  CHECK(data.n == 64);
  CHECK(data.feature_names == std::vector<std::string>{"x1", "x2", "x3"});
  for (const auto& column : data.columns) CHECK(column.size() == 64);
  CHECK(data.sensitive.size() == 64);
  CHECK(data.target.size() == 64);
  for (int v : data.sensitive) CHECK((v == 0 || v == 1));
  for (int v : data.target) CHECK((v == 0 || v == 1));
}

TEST_CASE("the sensitive attribute shifts every feature mean by x_mean_shift") {
  for (std::uint64_t seed : {1, 2, 3}) {
    SynthConfig config;
    config.n = 4000;
    config.seed = seed;
    const Dataset data = fairtree::generate(config);

    long n1 = 0;
    for (int v : data.sensitive) n1 += v;
    const long n0 = static_cast<long>(data.n) - n1;
    REQUIRE(n1 > 100);
    REQUIRE(n0 > 100);
    // difference of two sample means of unit-variance normals
    const double tolerance =
        4.0 * std::sqrt(1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n0));

    for (std::size_t k = 0; k < 3; ++k) {
      double sum1 = 0.0, sum0 = 0.0;
      for (std::size_t i = 0; i < data.n; ++i) {
        (data.sensitive[i] ? sum1 : sum0) += data.columns[k][i];
      }
      const double diff = sum1 / static_cast<double>(n1) - sum0 / static_cast<double>(n0);
      CHECK(std::fabs(diff - 1.1) < tolerance);
    }
  }
}

TEST_CASE("s_prob controls the group balance") {
  SynthConfig config;
  config.n = 10000;
  config.seed = 5;
  config.s_prob = 0.2;
  const Dataset data = fairtree::generate(config);
  long n1 = 0;
  for (int v : data.sensitive) n1 += v;
  CHECK(std::fabs(static_cast<double>(n1) / 10000.0 - 0.2) < 0.02);
}

TEST_CASE("positive rates match numerical integration of the process") {
  SynthConfig config;
  config.n = 1000000;
  config.seed = 31;
  const Dataset data = fairtree::generate(config);

  long n1 = 0, pos1 = 0, pos0 = 0;
  for (std::size_t i = 0; i < data.n; ++i) {
    if (data.sensitive[i]) {
      ++n1;
      pos1 += data.target[i];
    } else {
      pos0 += data.target[i];
    }
  }
  const long n0 = static_cast<long>(data.n) - n1;

  const double expected1 = static_cast<double>(positive_rate_given_s(1));
  const double expected0 = static_cast<double>(positive_rate_given_s(0));
  const double rate1 = static_cast<double>(pos1) / static_cast<double>(n1);
  const double rate0 = static_cast<double>(pos0) / static_cast<double>(n0);

  // binomial noise at n ~ 5e5 is under 0.0008 at three sigma
  CHECK(std::fabs(rate1 - expected1) < 0.003);
  CHECK(std::fabs(rate0 - expected0) < 0.003);
  // the process genuinely separates the groups' base rates
  CHECK(expected1 - expected0 > 0.15);
}

TEST_CASE("feature noise is shared across s_prob settings") {
  // Per-column streams: forcing S to 1 everywhere must shift each feature by
  // exactly the configured amount relative to forcing S to 0.
  SynthConfig ones;
  ones.n = 300;
  ones.seed = 77;
  ones.s_prob = 1.0;
  SynthConfig zeros = ones;
  zeros.s_prob = 0.0;

  const Dataset a = fairtree::generate(ones);
  const Dataset b = fairtree::generate(zeros);
  for (int v : a.sensitive) CHECK(v == 1);
  for (int v : b.sensitive) CHECK(v == 0);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < a.n; ++i) {
      CHECK(a.columns[k][i] - b.columns[k][i] == doctest::Approx(1.1).epsilon(1e-12));
    }
  }
}

TEST_CASE("outcome parameters do not disturb the feature draws") {
  SynthConfig base;
  base.n = 200;
  base.seed = 9;
  SynthConfig shifted = base;
  shifted.eta_intercept = 1.0;

  const Dataset a = fairtree::generate(base);
  const Dataset b = fairtree::generate(shifted);
  CHECK(a.columns == b.columns);
  CHECK(a.sensitive == b.sensitive);
  CHECK(a.target != b.target);  // a 2-unit intercept jump must move outcomes
}

TEST_CASE("sensitive_as_feature appends the group as a column") {
  SynthConfig config;
  config.n = 150;
  config.seed = 13;
  SynthConfig with = config;
  with.sensitive_as_feature = true;

  const Dataset plain = fairtree::generate(config);
  const Dataset wide = fairtree::generate(with);
  CHECK(wide.feature_names ==
        std::vector<std::string>{"x1", "x2", "x3", "s"});
  REQUIRE(wide.columns.size() == 4);
  for (std::size_t k = 0; k < 3; ++k) CHECK(wide.columns[k] == plain.columns[k]);
  CHECK(wide.target == plain.target);
  for (std::size_t i = 0; i < wide.n; ++i) {
    CHECK(wide.columns[3][i] == static_cast<double>(wide.sensitive[i]));
  }
}

TEST_CASE("generate validates its configuration") {
  SynthConfig config;
  config.n = 0;
  CHECK_THROWS_AS(fairtree::generate(config), fairtree::ConfigError);
  config.n = 10;
  config.s_prob = -0.1;
  CHECK_THROWS_AS(fairtree::generate(config), fairtree::ConfigError);
  config.s_prob = 1.1;
  CHECK_THROWS_AS(fairtree::generate(config), fairtree::ConfigError);
  config.s_prob = 0.5;
  config.x_sd = 0.0;
  CHECK_THROWS_AS(fairtree::generate(config), fairtree::ConfigError);
}

TEST_CASE("synth_csv round trips through the CSV loader bit for bit") {
  SynthConfig config;
  config.n = 120;
  config.seed = 21;
  const Dataset data = fairtree::generate(config);
  const std::string csv = fairtree::synth_csv(data);

  CHECK(csv.rfind("x1,x2,x3,s,y\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 121);
  CHECK(csv == fairtree::synth_csv(fairtree::generate(config)));

  const std::string path = testutil::write_file("synth_roundtrip.csv", csv);
  const auto specs = fairtree::parse_column_specs(testutil::synth_specs_json());
  const fairtree::LoadResult loaded = fairtree::load_csv(path, specs);
  CHECK(loaded.dropped_rows == 0);
  CHECK(loaded.data.columns == data.columns);
  CHECK(loaded.data.sensitive == data.sensitive);
  CHECK(loaded.data.target == data.target);
  std::remove(path.c_str());
}
