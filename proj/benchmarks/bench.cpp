#include <benchmark/benchmark.h>

#include "adjsep/adjustment.hpp"
#include "adjsep/enumeration.hpp"
#include "adjsep/harness.hpp"
#include "adjsep/mag.hpp"
#include "adjsep/separation.hpp"

namespace {

using namespace adjsep;

struct Instance {
    MixedGraph g;
    NodeSet X, Y;
};

Instance make(std::size_t n, double l, std::uint64_t seed) {
    Rng rng(seed);
    Instance in{random_dag(n, l, rng), {}, {}};
    in.X = NodeSet(n, {static_cast<NodeId>(rng.below(n / 2))});
    in.Y = NodeSet(n, {static_cast<NodeId>(n / 2 + rng.below(n / 2))});
    return in;
}

void bm_test_sep(benchmark::State& st) {
    auto in = make(static_cast<std::size_t>(st.range(0)), 5, 1);
    for (auto _ : st) benchmark::DoNotOptimize(test_sep(in.g, in.X, in.Y, in.g.empty_set()));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(bm_test_sep)->RangeMultiplier(10)->Range(100, 100000)->Complexity(benchmark::oN);

void bm_find_adjustment(benchmark::State& st) {
    auto in = make(static_cast<std::size_t>(st.range(0)), 5, 2);
    for (auto _ : st) benchmark::DoNotOptimize(find_adjustment(in.g, make_query(in.g, in.X, in.Y)));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(bm_find_adjustment)->RangeMultiplier(10)->Range(100, 100000)->Complexity(benchmark::oN);

void bm_find_min_sep(benchmark::State& st) {
    auto in = make(static_cast<std::size_t>(st.range(0)), 5, 3);
    const auto strategy = st.range(1) ? Strategy::sparse : Strategy::dense;
    for (auto _ : st) benchmark::DoNotOptimize(find_min_sep(in.g, make_query(in.g, in.X, in.Y), strategy));
}
BENCHMARK(bm_find_min_sep)->ArgsProduct({{100, 1000, 10000}, {0, 1}});

void bm_min_cost_adjustment(benchmark::State& st) {
    auto in = make(static_cast<std::size_t>(st.range(0)), 20, 4);
    for (auto _ : st)
        benchmark::DoNotOptimize(find_adjustment(in.g, make_query(in.g, in.X, in.Y), Objective::i_minimum));
}
BENCHMARK(bm_min_cost_adjustment)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

void bm_list_min_sep_first(benchmark::State& st) {
    auto in = make(static_cast<std::size_t>(st.range(0)), 5, 5);
    for (auto _ : st) {
        auto s = list_min_sep(in.g, make_query(in.g, in.X, in.Y));
        benchmark::DoNotOptimize(s.take(10));
    }
}
BENCHMARK(bm_list_min_sep_first)->Arg(50)->Arg(200);

void bm_dag_to_mag(benchmark::State& st) {
    auto in = make(static_cast<std::size_t>(st.range(0)), 5, 6);
    Rng rng(7);
    NodeSet L(in.g.node_count());
    for (NodeId v = 0; v < in.g.node_count(); ++v)
        if (rng.uniform() < 0.3) L.insert(v);
    for (auto _ : st) benchmark::DoNotOptimize(dag_to_mag(in.g, L));
}
BENCHMARK(bm_dag_to_mag)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
