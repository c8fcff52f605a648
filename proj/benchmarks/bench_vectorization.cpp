#include <benchmark/benchmark.h>

#include "extopo/metrics.hpp"
#include "extopo/random.hpp"
#include "extopo/vectorization.hpp"

using namespace extopo;

namespace {

ExtendedPersistenceDiagram random_diagram(std::size_t n, Rng& rng) {
  ExtendedPersistenceDiagram d;
  for (std::size_t i = 0; i < n; ++i) {
    double x = rng.uniform01(), y = rng.uniform01();
    PointKind k = all_point_kinds[rng.uniform_index(4)];
    bool up = k == PointKind::Ord0 || k == PointKind::Ext0;
    if (up != (x <= y)) std::swap(x, y);
    d.points.push_back({x, y, k});
  }
  return d;
}

void BM_landscape(benchmark::State& state) {
  Rng rng(1);
  auto d = random_diagram(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(landscape(d, 2, UniformGrid{50, std::nullopt}));
}
BENCHMARK(BM_landscape)->Arg(20)->Arg(200)->Arg(2000);

void BM_persistence_image(benchmark::State& state) {
  Rng rng(2);
  auto d = random_diagram(static_cast<std::size_t>(state.range(0)), rng);
  ImageParams params;
  for (auto _ : state) benchmark::DoNotOptimize(persistence_image(d, params));
}
BENCHMARK(BM_persistence_image)->Arg(20)->Arg(200)->Arg(2000);

void BM_bottleneck(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_diagram(n, rng), b = random_diagram(n, rng);
  MatchOptions relaxed;
  relaxed.essential_to_diagonal = true;
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck(a, b, relaxed));
}
BENCHMARK(BM_bottleneck)->Arg(20)->Arg(100)->Arg(400);

void BM_wasserstein(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_diagram(n, rng), b = random_diagram(n, rng);
  MatchOptions relaxed;
  relaxed.essential_to_diagonal = true;
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein(a, b, 1.0, relaxed));
}
BENCHMARK(BM_wasserstein)->Arg(20)->Arg(100)->Arg(400);

}  // namespace
