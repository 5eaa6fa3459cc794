#include <benchmark/benchmark.h>

#include "fgx/analytics.hpp"
#include "fgx/graph.hpp"
#include "fgx/methods.hpp"

using namespace fgx;

namespace {

void BM_gen_sequential(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gen_sequential(n));
}
BENCHMARK(BM_gen_sequential)->Arg(12)->Arg(18)->Arg(24);

void BM_gen_dfs(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gen_dfs(n));
}
BENCHMARK(BM_gen_dfs)->Arg(12)->Arg(20)->Arg(28);

void BM_gen_dls(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gen_dls(n));
}
BENCHMARK(BM_gen_dls)->Arg(12)->Arg(20)->Arg(28);

void BM_gen_decomposition(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gen_decomposition(n));
}
BENCHMARK(BM_gen_decomposition)->Arg(64)->Arg(1024)->Arg(16384);

void BM_gen_gd_m3(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(gen_gd(n, {.m = 3}));
}
BENCHMARK(BM_gen_gd_m3)->Arg(64)->Arg(1024)->Arg(16384);

void BM_enumerate_paths(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    StDag g = fib_graph(n);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_paths(g));
}
BENCHMARK(BM_enumerate_paths)->Arg(10)->Arg(16)->Arg(22);

void BM_expand_dls(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Expr e = gen_dls(n);
    for (auto _ : state) benchmark::DoNotOptimize(expand(e));
}
BENCHMARK(BM_expand_dls)->Arg(10)->Arg(15);

void BM_complexity_dfs(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Expr e = gen_dfs(n);
    for (auto _ : state) benchmark::DoNotOptimize(complexity(e));
}
BENCHMARK(BM_complexity_dfs)->Arg(20)->Arg(28);

void BM_min_counts_dp(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(min_counts_dp(n));
}
BENCHMARK(BM_min_counts_dp)->Arg(63)->Arg(255)->Arg(1000);

void BM_render_parse_roundtrip(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Expr e = gen_dfs(n);
    for (auto _ : state) {
        std::string text = render(e);
        benchmark::DoNotOptimize(parse(text));
    }
}
BENCHMARK(BM_render_parse_roundtrip)->Arg(16)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
