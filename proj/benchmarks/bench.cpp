#include <benchmark/benchmark.h>

#include "lg/analysis.hpp"
#include "lg/builders.hpp"
#include "lg/optimize.hpp"

using namespace lg;

static void BM_KDistStructure(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  int r = default_r(n, 2);
  for (auto _ : state) {
    LearningGraph lg = kdist_structure(n, 2, r);
    benchmark::DoNotOptimize(lg);
  }
}
BENCHMARK(BM_KDistStructure)->Arg(8)->Arg(12)->Arg(16);

static void BM_CliqueBuild(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ProblemInstance x = ProblemInstance::graph(n, {{0, 1}, {0, 2}, {1, 2}});
  for (auto _ : state) {
    BuildResult b = build_kclique(n, 3, 4, x);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_CliqueBuild)->Arg(6)->Arg(8);

static void BM_MaxSpeciality(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  LearningGraph lg = kdist_structure(n, 2, default_r(n, 2));
  GraphIndex gi(lg);
  FlowAssignment flow = kdist_flow(lg, {0, 1});
  SymmetryGroup grp = SymmetryGroup::positions(lg.universe);
  for (auto _ : state) {
    Rational t = max_speciality(gi, 1, grp, flow);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_MaxSpeciality)->Arg(6)->Arg(8);

static void BM_StageOrbits(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  LearningGraph lg = kdist_structure(n, 2, default_r(n, 2));
  GraphIndex gi(lg);
  SymmetryGroup grp = SymmetryGroup::positions(lg.universe);
  for (auto _ : state) {
    auto orbits = stage_orbits(gi, 1, grp);
    benchmark::DoNotOptimize(orbits);
  }
}
BENCHMARK(BM_StageOrbits)->Arg(6)->Arg(8);

static void BM_Balance(benchmark::State& state) {
  auto terms = stage_exponent_terms(Family::Subgraph, 5, 2, 4);
  for (auto _ : state) {
    BalanceSolution sol = balance(terms, true);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(BM_Balance);

BENCHMARK_MAIN();
