// Microbenchmarks for the hot paths: single-node split search, full tree
// growth, and the parity/CI computation.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "fairtree/fairmetrics.hpp"
#include "fairtree/splitter.hpp"
#include "fairtree/synthdata.hpp"
#include "fairtree/tree.hpp"

namespace {

fairtree::Dataset make_data(std::size_t n, std::uint64_t seed) {
  fairtree::SynthConfig config;
  config.n = n;
  config.seed = seed;
  return fairtree::generate(config);
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  return rows;
}

void BM_BestSplit(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const fairtree::Dataset data = make_data(n, 11);
  const fairtree::NodeView node{&data, all_rows(n)};
  for (auto _ : state) {
    auto best = fairtree::best_split(node, 0.3, 0.05, 5);
    benchmark::DoNotOptimize(best);
  }
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_BestSplit)->Arg(200)->Arg(1000)->Arg(5000)->Complexity();

void BM_Grow(benchmark::State& state) {
  const fairtree::Dataset data = make_data(2000, 11);
  fairtree::GrowConfig config;
  config.max_depth = static_cast<int>(state.range(0));
  config.lambda = 0.3;
  for (auto _ : state) {
    fairtree::TreeModel model = fairtree::grow(data, config);
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(BM_Grow)->Arg(3)->Arg(5);

void BM_StatisticalParity(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const fairtree::Dataset data = make_data(n, 11);
  for (auto _ : state) {
    auto report = fairtree::statistical_parity(data.target, data.sensitive, 0.05);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_StatisticalParity)->Arg(2000)->Arg(20000);

}  // namespace

BENCHMARK_MAIN();
