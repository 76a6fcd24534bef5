#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace fairtree {

// SplitMix64 step function (Steele, Lea & Flood 2014). Used to derive
// independent stream seeds from a single user seed.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

// Deterministic random source.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++
// standard, seeded with the (stream+1)-th SplitMix64 output of the user
// seed. All variate transforms are implemented here rather than with
// std::*_distribution, whose results are implementation-defined; this makes
// every draw bit-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    SplitMix64 sm{seed};
    std::uint64_t s = 0;
    for (std::uint64_t i = 0; i <= stream; ++i) s = sm.next();
    engine_.seed(s);
  }

  // Uniform real in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Normal variate via the Box-Muller transform (one variate per call).
  double normal(double mean, double sd) {
    const double u1 = 1.0 - uniform();  // (0, 1]; keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  // Bernoulli draw as {0,1}.
  int bernoulli(double p) { return uniform() < p ? 1 : 0; }

  // Unbiased integer in [0, bound) by rejection. bound must be nonzero.
  std::uint64_t uniform_int(std::uint64_t bound) {
    const std::uint64_t residue = (std::uint64_t{0} - bound) % bound;  // 2^64 mod bound
    const std::uint64_t limit = std::uint64_t{0} - residue;            // largest multiple of bound, or 0 if 2^64 | bound
    std::uint64_t v = engine_();
    if (residue != 0) {
      while (v >= limit) v = engine_();
    }
    return v % bound;
  }

  // In-place Fisher-Yates shuffle.
  template <class T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fairtree
