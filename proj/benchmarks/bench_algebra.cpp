#include <benchmark/benchmark.h>

#include "cartansuper/derivations.hpp"
#include "cartansuper/families.hpp"
#include "cartansuper/localcert.hpp"

using namespace cartansuper;

namespace {

// family index, n
FamilySpec spec_of(const benchmark::State& state) {
    static constexpr Family kFamilies[] = {Family::W, Family::S, Family::Stilde, Family::H};
    return {kFamilies[state.range(0)], static_cast<int>(state.range(1))};
}

void models(benchmark::internal::Benchmark* b) {
    b->Args({0, 4})->Args({1, 4})->Args({2, 4})->Args({3, 5})->Args({3, 6})->Unit(benchmark::kMillisecond);
}

void BM_Build(benchmark::State& state) {
    const FamilySpec s = spec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(build(s).dim());
}
BENCHMARK(BM_Build)->Apply(models);

void BM_DerivationSpace(benchmark::State& state) {
    const AlgebraModel a = build(spec_of(state));
    for (auto _ : state) benchmark::DoNotOptimize(derivation_space(a).dim());
}
BENCHMARK(BM_DerivationSpace)->Apply(models);

void BM_Certify(benchmark::State& state) {
    const LPrimeModel p = build_lprime(build(spec_of(state)));
    for (auto _ : state) benchmark::DoNotOptimize(certify(p).dim_c);
}
BENCHMARK(BM_Certify)->Apply(models);

void BM_CertifyJobs4(benchmark::State& state) {
    const LPrimeModel p = build_lprime(build(spec_of(state)));
    CertifyOptions o;
    o.jobs = 4;
    for (auto _ : state) benchmark::DoNotOptimize(certify(p, o).dim_c);
}
BENCHMARK(BM_CertifyJobs4)->Apply(models);

}  // namespace
