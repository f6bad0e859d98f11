#include <benchmark/benchmark.h>

#include <random>

#include "isokit/canon.hpp"
#include "isokit/encoding.hpp"
#include "isokit/refine.hpp"

using namespace isokit;

namespace {

ColoredGraph random_graph(std::uint64_t seed, int n, double p) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    ColoredGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

ColoredGraph petersen() {
    ColoredGraph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, 5 + i);
    }
    return g;
}

void BM_naive_refine(benchmark::State& state) {
    ColoredGraph g = random_graph(1, static_cast<int>(state.range(0)), 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(naive_refine(g).num_classes());
}
BENCHMARK(BM_naive_refine)->Arg(64)->Arg(256)->Arg(1024);

void BM_canonical_form(benchmark::State& state) {
    ColoredGraph g = random_graph(2, static_cast<int>(state.range(0)), 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(canonical_form(g).bytes.size());
}
BENCHMARK(BM_canonical_form)->Arg(16)->Arg(32)->Arg(64);

void BM_automorphism_group_petersen(benchmark::State& state) {
    ColoredGraph g = petersen();
    for (auto _ : state) benchmark::DoNotOptimize(automorphism_group(g).order());
}
BENCHMARK(BM_automorphism_group_petersen);

void BM_contains_induced_p5(benchmark::State& state) {
    ColoredGraph host = random_graph(3, static_cast<int>(state.range(0)), 0.2);
    ColoredGraph p5 = build_named(GraphFamily::path(5));
    for (auto _ : state) benchmark::DoNotOptimize(contains_induced(p5, host).has_value());
}
BENCHMARK(BM_contains_induced_p5)->Arg(32)->Arg(64);

void BM_encode_check(benchmark::State& state) {
    const Encoding& enc = *builtin_encoding("x-2k2k1-k4");
    ColoredGraph g = random_graph(4, static_cast<int>(state.range(0)), 0.3);
    for (auto _ : state) {
        Budget budget(10'000'000);
        benchmark::DoNotOptimize(find_encoding_map(g, enc, &budget).has_value());
    }
}
BENCHMARK(BM_encode_check)->Arg(8)->Arg(12);

void BM_reduce(benchmark::State& state) {
    const Encoding& enc = *builtin_encoding("x-2k2k1-k4");
    PathWitness w = *is_simple_path_encoding(enc);
    ColoredGraph g = normalize_for_reduction(random_graph(5, 6, 0.5));
    for (auto _ : state) benchmark::DoNotOptimize(reduce_into_class(g, enc, w).size());
}
BENCHMARK(BM_reduce);

} // namespace

BENCHMARK_MAIN();
