#include "benchmark/benchmark.h"
#include "cfk/catalog.hpp"
#include "cfk/invariants.hpp"
#include "cfk/io.hpp"
#include "cfk/order.hpp"
#include "cfk/region.hpp"

namespace {

void BM_TensorReduce(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto a = cfk::torus_complex(n, n + 1);
    const auto b = cfk::dual(cfk::trefoil_cable_complex(n));
    for (auto _ : state) benchmark::DoNotOptimize(cfk::reduce(cfk::tensor(a, b)));
}
BENCHMARK(BM_TensorReduce)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Epsilon(benchmark::State& state) {
    const auto c = cfk::kn_model(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cfk::epsilon(c));
}
BENCHMARK(BM_Epsilon)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ASequence(benchmark::State& state) {
    const auto c = cfk::trefoil_cable_complex(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cfk::a_sequence(c));
}
BENCHMARK(BM_ASequence)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_RealizeMinHook(benchmark::State& state) {
    const auto c = cfk::kn_model(static_cast<int>(state.range(0)));
    const int t = cfk::tau(c);
    for (auto _ : state) benchmark::DoNotOptimize(cfk::realize_region(c, cfk::RegionSpec::min_hook(t)));
}
BENCHMARK(BM_RealizeMinHook)->Arg(2)->Arg(3)->Arg(4);

void BM_CompareKnModel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto k = cfk::kn_model(n);
    const auto s = cfk::staircase({1, n, n, 1});
    for (auto _ : state) benchmark::DoNotOptimize(cfk::compare(k, s));
}
BENCHMARK(BM_CompareKnModel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MultiplePattern(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const auto s = cfk::staircase({1, 3, 3, 1});
    for (auto _ : state) benchmark::DoNotOptimize(cfk::multiple(s, k));
}
BENCHMARK(BM_MultiplePattern)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_SerializeRoundTrip(benchmark::State& state) {
    const auto c = cfk::kn_model(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cfk::parse(cfk::serialize(c)));
}
BENCHMARK(BM_SerializeRoundTrip)->Arg(2)->Arg(4);

}  // namespace
