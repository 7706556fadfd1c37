#include <benchmark/benchmark.h>

#include <random>

#include "cartansuper/linalg.hpp"

using namespace cartansuper;

namespace {

Matrix random_sparse(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < 4; ++k) m.set(i, rng() % n, Rational(static_cast<std::int64_t>(rng() % 7) - 3));
    return m;
}

void BM_Rank(benchmark::State& state) {
    const Matrix m = random_sparse(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Arg(64)->Arg(128)->Arg(256);

void BM_Kernel(benchmark::State& state) {
    const Matrix m = random_sparse(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(kernel(m).dim());
}
BENCHMARK(BM_Kernel)->Arg(64)->Arg(128)->Arg(256);

}  // namespace
