#include <benchmark/benchmark.h>

#include "extopo/filtration.hpp"
#include "extopo/graph.hpp"
#include "extopo/persistence.hpp"
#include "extopo/random.hpp"

using namespace extopo;

namespace {

VertexFunction uniform_function(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform01();
  return VertexFunction(std::move(v), "uniform");
}

void BM_epd_fast(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  Graph g = random_connected(n, 2 * n, rng);
  VertexFunction f = uniform_function(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(epd_fast(g, f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}
BENCHMARK(BM_epd_fast)->Arg(1000)->Arg(10000)->Arg(50000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_epd_reduction_oracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  Graph g = random_connected(n, 2 * n, rng);
  VertexFunction f = uniform_function(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(epd_reduction_oracle(g, f));
}
BENCHMARK(BM_epd_reduction_oracle)->Arg(50)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_centrality(benchmark::State& state) {
  Rng rng(3);
  Graph g = random_connected(2000, 4000, rng);
  const auto c = static_cast<Centrality>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_centrality(g, c));
  state.SetLabel(to_string(c));
}
BENCHMARK(BM_centrality)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
