#include <benchmark/benchmark.h>

#include "qes/closedforms.hpp"
#include "qes/elimination.hpp"
#include "qes/numverify.hpp"

using namespace qes;

static void BM_ForwardSubstitute(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0)), N = static_cast<int>(state.range(1));
    TrapMatrix m = build_trap(q, N);
    for (auto _ : state) benchmark::DoNotOptimize(forward_substitute(m));
}
BENCHMARK(BM_ForwardSubstitute)->Args({1, 12})->Args({3, 8})->Args({5, 6});

static void BM_Eliminate(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0)), N = static_cast<int>(state.range(1));
    TailSystem t = forward_substitute(build_trap(q, N));
    for (auto _ : state) benchmark::DoNotOptimize(eliminate(t));
    state.SetLabel("q=" + std::to_string(q) + " N=" + std::to_string(N));
}
BENCHMARK(BM_Eliminate)->Args({1, 12})->Args({2, 8})->Args({3, 6})->Args({4, 5})->Unit(benchmark::kMillisecond);

static void BM_RealSolutions(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0)), N = static_cast<int>(state.range(1));
    TailSystem t = forward_substitute(build_trap(q, N));
    SecularPoly s = eliminate(t);
    for (auto _ : state) benchmark::DoNotOptimize(real_solutions(t, s));
}
BENCHMARK(BM_RealSolutions)->Args({1, 12})->Args({2, 8})->Args({3, 6})->Args({4, 4})->Unit(benchmark::kMillisecond);

static void BM_BruteForceCheck(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    TrapMatrix m = build_trap(3, N);
    std::vector<Rational> s{Rational(N - 1), Rational(N - 1), Rational(N - 1)};
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_check(m, s));
}
BENCHMARK(BM_BruteForceCheck)->DenseRange(3, 8);

static void BM_FactorProduct(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    FactorFamily F = q5_factor_family(N);
    for (auto _ : state) benchmark::DoNotOptimize(F.product());
}
BENCHMARK(BM_FactorProduct)->Arg(6)->Arg(7);

static void BM_SturmIsolate(benchmark::State& state) {
    TailSystem t = forward_substitute(build_trap(4, 5));
    UniPoly p = eliminate(t).poly;
    for (auto _ : state) benchmark::DoNotOptimize(sturm_isolate(p));
}
BENCHMARK(BM_SturmIsolate)->Unit(benchmark::kMillisecond);

static void BM_RadialEigensolve(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    RadialPotential V = [](long double r) { return r * r; };
    for (auto _ : state) benchmark::DoNotOptimize(radial_eigensolve(V, 0, RadialGrid{0, 8, M}, 3));
    state.SetComplexityN(M);
}
BENCHMARK(BM_RadialEigensolve)->RangeMultiplier(2)->Range(200, 3200)->Complexity()->Unit(benchmark::kMillisecond);

static void BM_LargeDTrend(benchmark::State& state) {
    TrendConfig c;
    for (auto _ : state) benchmark::DoNotOptimize(largeD_trend(c));
}
BENCHMARK(BM_LargeDTrend)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
