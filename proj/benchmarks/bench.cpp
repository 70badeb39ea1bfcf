#include "support.hpp"

#include "gmprof/decider.hpp"
#include "gmprof/genus.hpp"
#include "gmprof/presentation.hpp"

#include <benchmark/benchmark.h>

using namespace gmtest;

static void BM_CompareW1N2(benchmark::State& state) {
  const GraphManifold a = w1(), b = n2();
  for (auto _ : state) benchmark::DoNotOptimize(check_profinite_iso(a, b));
}
BENCHMARK(BM_CompareW1N2);

static void BM_HomeoRandom(benchmark::State& state) {
  Rng rng(5);
  const GraphManifold m = random_manifold(rng, static_cast<int>(state.range(0)));
  const GraphManifold t = random_relabel(rng, random_moves(rng, m, 5));
  for (auto _ : state) benchmark::DoNotOptimize(check_homeomorphic(m, t));
}
BENCHMARK(BM_HomeoRandom)->Arg(3)->Arg(5);

static void BM_GenusW1(benchmark::State& state) {
  const GraphManifold m = w1();
  for (auto _ : state) benchmark::DoNotOptimize(profinite_genus(m));
}
BENCHMARK(BM_GenusW1);

static void BM_CountHoms(benchmark::State& state) {
  const Presentation p = build_presentation(w1());
  const FiniteGroupSpec g = builtin_catalogue()[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(g.name);
  for (auto _ : state) benchmark::DoNotOptimize(count_homs(p, g));
}
BENCHMARK(BM_CountHoms)->DenseRange(0, 7);

static void BM_IndexSubgroups(benchmark::State& state) {
  const Presentation p = build_presentation(w1());
  for (auto _ : state) benchmark::DoNotOptimize(count_index_subgroups(p, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_IndexSubgroups)->DenseRange(2, 5);

static void BM_KappaSolutions(benchmark::State& state) {
  const std::int64_t m = state.range(0);
  const std::vector<KappaConstraint> cs = {{1, 4, 1}, {2, 9, -1}, {3, 5, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(kappa_solutions(cs, m));
}
BENCHMARK(BM_KappaSolutions)->Arg(2520)->Arg(2520 * 11 * 13);

BENCHMARK_MAIN();
