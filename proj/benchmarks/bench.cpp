#include <benchmark/benchmark.h>

#include <vector>

#include "tww/engine.hpp"
#include "tww/exact.hpp"
#include "tww/formula.hpp"
#include "tww/matrix.hpp"
#include "tww/pipeline.hpp"
#include "tww/trigraph.hpp"

namespace {

using namespace tww;

Trigraph path_graph(int n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
    return Trigraph::from_edges(n, edges);
}

// left-fold contraction of a path: width 2
ContractionSequence path_sequence(int n) {
    ContractionSequence seq;
    seq.initial = path_graph(n);
    Vertex cur = 1;
    for (int i = 0; i < n - 1; ++i) {
        Vertex w = n + 1 + i;
        seq.steps.push_back({cur, i + 2, w});
        cur = w;
    }
    return seq;
}

void BM_contraction_replay(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    ContractionSequence seq = path_sequence(n);
    for (auto _ : state) benchmark::DoNotOptimize(verify_sequence(seq, -1).width);
    state.SetComplexityN(n);
}
BENCHMARK(BM_contraction_replay)->Range(64, 4096)->Complexity();

void BM_greedy_sequence(benchmark::State& state) {
    Trigraph g = path_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(greedy_sequence(g).steps.size());
}
BENCHMARK(BM_greedy_sequence)->Range(8, 64);

void BM_model_check_path(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    BinaryStructure s = BinaryStructure::from_graph(path_graph(n));
    ContractionSequence seq = path_sequence(n);
    PrenexFormula f = parse_formula("E x1 E x2 E(x1,x2)");
    for (auto _ : state) {
        ModelChecker mc(s, seq, Caps{});
        benchmark::DoNotOptimize(mc.check(f));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_model_check_path)->Range(256, 16384)->Complexity();

void BM_division_sequence(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    AlphabetMatrix m = AlphabetMatrix::zero_one(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) m.set(i, j, (i + j) % 2 == 0 ? 1 : 0);
    for (auto _ : state) benchmark::DoNotOptimize(division_sequence(m, 2).complete);
}
BENCHMARK(BM_division_sequence)->Range(8, 64);

}  // namespace

BENCHMARK_MAIN();
