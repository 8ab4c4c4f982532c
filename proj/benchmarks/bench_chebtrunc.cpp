#include <benchmark/benchmark.h>

#include <chebtrunc/algorithms.hpp>
#include <chebtrunc/chebyshev.hpp>
#include <chebtrunc/noise.hpp>

#include <random>
#include <vector>

namespace {

using namespace chebtrunc;

double runge(double x) { return 1.0 / (1.0 + 25.0 * x * x); }

std::vector<double> random_values(std::size_t count) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(count);
    for (double& x : v) x = dist(rng);
    return v;
}

void BM_ValuesToCoeffs(benchmark::State& state) {
    const auto values = random_values(static_cast<std::size_t>(state.range(0)) + 1);
    for (auto _ : state) {
        auto series = values_to_coeffs(values);
        benchmark::DoNotOptimize(series);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ValuesToCoeffs)->RangeMultiplier(4)->Range(256, 1 << 20)->Complexity();

void BM_CoeffsToValues(benchmark::State& state) {
    const ChebyshevSeries series(random_values(static_cast<std::size_t>(state.range(0)) + 1));
    const ChebyshevGrid grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto values = coeffs_to_values(series, grid);
        benchmark::DoNotOptimize(values);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CoeffsToValues)->RangeMultiplier(4)->Range(256, 1 << 18)->Complexity();

void BM_Clenshaw(benchmark::State& state) {
    const ChebyshevSeries series(random_values(static_cast<std::size_t>(state.range(0)) + 1));
    double x = -1.0;
    for (auto _ : state) {
        x = x >= 1.0 ? -1.0 : x + 1e-3;
        benchmark::DoNotOptimize(evaluate(series, x));
    }
}
BENCHMARK(BM_Clenshaw)->Arg(32)->Arg(256)->Arg(2048);

void BM_SampleMany(benchmark::State& state) {
    SamplingOracle oracle(runge, NoiseField::constant(0.5), 99);
    for (auto _ : state) {
        auto stats = oracle.sample_many(0.25, state.range(0));
        benchmark::DoNotOptimize(stats);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleMany)->Arg(1000)->Arg(100000);

void BM_NoisyChebtrunc(benchmark::State& state) {
    const NoiseField field = NoiseField::indicator(1.0, 1e-5, 0.0, 1.0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        SamplingOracle oracle(runge, field, ++seed);
        auto result = noisy_chebtrunc(oracle, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(result);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NoisyChebtrunc)->RangeMultiplier(8)->Range(4096, 1 << 20)->Complexity();

void BM_HeteroChebtrunc(benchmark::State& state) {
    const NoiseField field = NoiseField::indicator(1.0, 1e-5, 0.0, 1.0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        SamplingOracle oracle(runge, field, ++seed);
        auto result = hetero_chebtrunc(oracle, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(result);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HeteroChebtrunc)->RangeMultiplier(8)->Range(4096, 1 << 20)->Complexity();

}  // namespace

BENCHMARK_MAIN();
