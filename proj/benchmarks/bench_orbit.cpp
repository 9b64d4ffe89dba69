#include <benchmark/benchmark.h>

#include "nielsen/catalog.hpp"
#include "nielsen/orbit.hpp"
#include "nielsen/solvable.hpp"

using namespace nielsen;

static void BM_ClassifyDihedralPairs(benchmark::State& state) {
  const FiniteGroup g = build_group("dihedral:" + std::to_string(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(g, 2));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClassifyDihedralPairs)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void BM_ClassifyAlt5(benchmark::State& state) {
  const FiniteGroup g = build_group("alt:5");
  const std::uint32_t n = std::uint32_t(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(g, n));
  }
}
BENCHMARK(BM_ClassifyAlt5)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_WeakClassifyAlt5Pairs(benchmark::State& state) {
  const FiniteGroup g = build_group("alt:5");
  for (auto _ : state) {
    benchmark::DoNotOptimize(weak_classify(g, 2));
  }
}
BENCHMARK(BM_WeakClassifyAlt5Pairs)->Unit(benchmark::kMillisecond);

static void BM_OrbitD10(benchmark::State& state) {
  const FiniteGroup g = build_group("dihedral:5");
  const GenVector v = make_genvec(g, {1, 5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(orbit(g, v));
  }
}
BENCHMARK(BM_OrbitD10);

static void BM_PackUnpack(benchmark::State& state) {
  const FiniteGroup g = build_group("sym:4");
  const Packing pk = Packing::for_group(g, 3);
  const Elem e[3] = {7, 3, 11};
  Elem out[3];
  for (auto _ : state) {
    const std::uint64_t code = pk.pack(e);
    pk.unpack(code, out);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_PackUnpack);

static void BM_Closure(benchmark::State& state) {
  const FiniteGroup g = build_group("sym:4");
  const std::vector<Elem> seed = {7, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(closure(g, seed));
  }
}
BENCHMARK(BM_Closure);

static void BM_BuildPsl2(benchmark::State& state) {
  const std::string spec = "psl2:" + std::to_string(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_group(spec));
  }
  state.SetLabel(std::to_string(build_group(spec).order()) + " elements");
}
BENCHMARK(BM_BuildPsl2)->Arg(5)->Arg(7)->Arg(9)->Arg(13)->Unit(benchmark::kMillisecond);

static void BM_CyclicTowerReduce(benchmark::State& state) {
  const FiniteGroup g = build_group("sym:4");
  const CyclicTower t = cyclic_tower(g);
  const GenVector v = make_genvec(g, {7, 3, 11});
  for (auto _ : state) {
    benchmark::DoNotOptimize(tower_reduce(g, v, t));
  }
}
BENCHMARK(BM_CyclicTowerReduce);

BENCHMARK_MAIN();
