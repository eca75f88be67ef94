#include <random>

#include "benchmark/benchmark.h"
#include "cfk/f2.hpp"
#include "cfk/laurent.hpp"

namespace {

void BM_TorusAlexander(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cfk::torus_alexander(p, p + 1));
}
BENCHMARK(BM_TorusAlexander)->Arg(3)->Arg(8)->Arg(16)->Arg(32);

void BM_CableAlexander(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto trefoil = cfk::torus_alexander(2, 3);
    for (auto _ : state) benchmark::DoNotOptimize(cfk::cable_alexander(trefoil, n, 2 * n + 1));
}
BENCHMARK(BM_CableAlexander)->Arg(2)->Arg(5)->Arg(10);

// Random complex with d^2 = 0: each odd basis vector maps to its even
// neighbour plus a random sum of earlier even vectors, all of which are cycles.
cfk::f2::ChainComplex random_complex(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    cfk::f2::ChainComplex c;
    c.dim = n;
    c.boundary.assign(n, {});
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        cfk::f2::SparseVec v{static_cast<std::uint32_t>(k)};
        for (std::size_t j = 0; j < k; j += 2)
            if (rng() % 8 == 0) v = cfk::f2::xor_sparse(v, {static_cast<std::uint32_t>(j)});
        c.boundary[k + 1] = v;
    }
    return c;
}

void BM_Homology(benchmark::State& state) {
    const auto c = random_complex(static_cast<std::size_t>(state.range(0)), 7);
    const auto storage = state.range(1) == 0 ? cfk::f2::Storage::Dense : cfk::f2::Storage::Sparse;
    for (auto _ : state) benchmark::DoNotOptimize(cfk::f2::homology(c, storage));
}
BENCHMARK(BM_Homology)->ArgsProduct({{64, 256, 1024, 2048}, {0, 1}});

}  // namespace
