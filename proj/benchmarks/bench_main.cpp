#include <random>

#include <benchmark/benchmark.h>

#include "basp/instances.hpp"
#include "basp/profile.hpp"
#include "basp/search.hpp"

namespace {

using namespace basp;

PathBounds CorridorAisle(const RoadGraph& g, std::size_t nodes) {
  PathWord word;
  for (NodeId v = 0;;) {
    word.push_back(v);
    const auto out = g.out_arcs(v);
    if (word.size() >= nodes || out.empty()) break;
    v = g.arc(out.front()).to;
  }
  return ConcatBounds(g, word);
}

void BM_PlanExact(benchmark::State& state) {
  const RoadGraph g = CorridorInstance({});
  const PathBounds pb = CorridorAisle(g, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(PlanSpeed(pb, {0.0, 0.0}).time);
}
BENCHMARK(BM_PlanExact)->Arg(5)->Arg(10)->Arg(20);

void BM_PlanGrid(benchmark::State& state) {
  const RoadGraph g = CorridorInstance({});
  const PathBounds pb = CorridorAisle(g, 15);
  PlanOptions opt;
  opt.engine = PlanOptions::EngineChoice::kGrid;
  opt.cells_per_arc = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(PlanSpeed(pb, {0.0, 0.0}, opt).time);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PlanGrid)->RangeMultiplier(2)->Range(500, 8000)->Complexity(benchmark::oN);

void BM_AdaptiveCorridor(benchmark::State& state) {
  RoadGraph g = CorridorInstance({});
  std::mt19937_64 rng(3);
  std::vector<Query> queries;
  for (int i = 0; i < 32; ++i) queries.push_back(RandomQuery(g, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    g.set_query(queries[i++ % queries.size()]);
    benchmark::DoNotOptimize(AdaptiveAstar(g).time);
  }
}
BENCHMARK(BM_AdaptiveCorridor)->Unit(benchmark::kMillisecond);

void BM_AdaptiveRandom(benchmark::State& state) {
  GeneratorParams p;
  p.n = static_cast<int>(state.range(0));
  RoadGraph g = RandomInstance(p);
  std::mt19937_64 rng(5);
  std::vector<Query> queries;
  for (int i = 0; i < 16; ++i) queries.push_back(RandomQuery(g, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    g.set_query(queries[i++ % queries.size()]);
    benchmark::DoNotOptimize(AdaptiveAstar(g).time);
  }
}
BENCHMARK(BM_AdaptiveRandom)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
