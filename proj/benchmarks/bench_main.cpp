#include <benchmark/benchmark.h>

#include "dmc/decreasing_set.hpp"
#include "dmc/evaluation.hpp"
#include "dmc/lta.hpp"
#include "dmc/profile.hpp"
#include "dmc/type1.hpp"

namespace {

using namespace dmc;

void BM_Ev(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    std::vector<IndexMask> terms;
    for (IndexMask t = 0; t < (IndexMask{1} << m); t += 7) terms.push_back(t);
    auto p = Polynomial::from_terms(m, terms);
    for (auto _ : state) benchmark::DoNotOptimize(ev(p));
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << m));
}
BENCHMARK(BM_Ev)->DenseRange(6, 14, 4);

void BM_GrayWalk(benchmark::State& state) {
    auto I = rm_set(static_cast<int>(state.range(0)), 6);
    for (auto _ : state) benchmark::DoNotOptimize(full_weight_distribution(I, kDefaultCapK, 1));
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << I.size()));
}
BENCHMARK(BM_GrayWalk)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_OrbitVectors(benchmark::State& state) {
    auto f = Monomial::parse("x3x5x6", 7);
    for (auto _ : state) benchmark::DoNotOptimize(orbit_vectors(OrbitSpec::full(f)));
    state.SetItemsProcessed(state.iterations() * (1 << 14));
}
BENCHMARK(BM_OrbitVectors)->Unit(benchmark::kMillisecond);

void BM_Type1Formula(benchmark::State& state) {
    auto I = rm_set(4, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(count_type1_total(I, 4));
}
BENCHMARK(BM_Type1Formula)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_Type2Census(benchmark::State& state) {
    auto I = closure(6, {Monomial::parse("x1x3x4", 6), Monomial::parse("x0x2x5", 6)});
    Type2Options o;
    o.census.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(count_type2_census(I, 2, o));
}
BENCHMARK(BM_Type2Census)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
