#include <benchmark/benchmark.h>

#include "eur/fisher.hpp"
#include "eur/random_states.hpp"
#include "eur/state_factory.hpp"
#include "eur/wigner.hpp"

using namespace eur;

namespace {

GridState test_state(std::size_t n) {
    Rng rng(1);
    return random_smooth_mixture(rng, Grid1D::over(-14.0, 14.0, n));
}

void BM_MomentumRepresentation(benchmark::State& state) {
    const GridState s = test_state(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(momentum_representation(s));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MomentumRepresentation)->RangeMultiplier(2)->Range(512, 8192)->Complexity();

void BM_FisherLength(benchmark::State& state) {
    const GridDistribution d =
        position_density(test_state(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(fisher_length(d));
}
BENCHMARK(BM_FisherLength)->RangeMultiplier(2)->Range(512, 8192);

void BM_ClassicalMomentumField(benchmark::State& state) {
    const GridState s = test_state(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(classical_momentum_field(s));
}
BENCHMARK(BM_ClassicalMomentumField)->RangeMultiplier(2)->Range(512, 8192);

void BM_WignerFunction(benchmark::State& state) {
    const GridState s = test_state(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const WignerGrid w = wigner_function(s);
        benchmark::DoNotOptimize(w.w.data());
    }
}
BENCHMARK(BM_WignerFunction)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);

void BM_DensityMomentumMoments(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Grid1D g = Grid1D::over(-10.0, 10.0, n);
    const GridDensity rho = density_from_mixture(
        {0.5, 0.5}, {make_harmonic_eigenstate(g, 0), make_harmonic_eigenstate(g, 1)});
    for (auto _ : state) benchmark::DoNotOptimize(density_momentum_moments(rho));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DensityMomentumMoments)
    ->RangeMultiplier(2)
    ->Range(256, 1024)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
