#include <benchmark/benchmark.h>

#include <vector>

#include <cohmark/channels.hpp>
#include <cohmark/coherence.hpp>
#include <cohmark/envmodels.hpp>
#include <cohmark/lindblad.hpp>
#include <cohmark/nonmarkov.hpp>

using namespace cohmark;

namespace {

void BM_CoherenceTrace(benchmark::State& state) {
    const ChannelSpec spec = ChannelSpec::diss2q(4.0, 0.5);
    const std::vector<double> phases{0.0, 1.0, 2.0, 0.5};
    const DensityOperator rho0 = max_coherent_state(spec.basis(), phases);
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> times(n + 1);
    for (std::size_t k = 0; k <= n; ++k) times[k] = 30.0 * static_cast<double>(k) / static_cast<double>(n);
    for (auto _ : state) {
        const auto factors = map_factors_on_grid(spec, times);
        const SquareMatrix native = to_basis_coordinates(rho0.matrix(), spec.basis());
        double sum = 0.0;
        for (const auto& f : factors) sum += coherence_l1_native(spec, native, f);
        benchmark::DoNotOptimize(sum);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n + 1));
}
BENCHMARK(BM_CoherenceTrace)->Arg(3000)->Arg(30000);

void BM_DephasingEnvelopeGrid(benchmark::State& state) {
    std::vector<double> times(20001);
    for (std::size_t k = 0; k < times.size(); ++k) times[k] = 1e-3 * static_cast<double>(k);
    for (auto _ : state) benchmark::DoNotOptimize(big_gamma_on_grid(times, 3.5));
}
BENCHMARK(BM_DephasingEnvelopeGrid)->Unit(benchmark::kMillisecond);

// One point of the two-qubit heatmap.
void BM_SimplifiedMeasurePoint(benchmark::State& state) {
    const ChannelSpec spec = ChannelSpec::diss2q(4.0, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(measure_simplified(spec, 30.0, 1e-3).value);
}
BENCHMARK(BM_SimplifiedMeasurePoint)->Unit(benchmark::kMillisecond);

void BM_QubitMeasure(benchmark::State& state) {
    const ChannelSpec spec = ChannelSpec::deph1q(3.5);
    for (auto _ : state) benchmark::DoNotOptimize(measure_full(spec, 20.0, 1e-3).value);
}
BENCHMARK(BM_QubitMeasure)->Unit(benchmark::kMillisecond);

void BM_IntegrateTwoQubitPoles(benchmark::State& state) {
    const ChannelSpec spec = ChannelSpec::diss2q(4.0, 0.5);
    const auto gen = generator_for(spec);
    const std::vector<double> phases{0.0, 0.0, 0.0, 0.0};
    const DensityOperator rho0 = max_coherent_state(spec.basis(), phases);
    std::vector<double> times;
    for (int k = 0; k <= 100; ++k) times.push_back(0.1 * k);
    IntegratorConfig cfg;
    cfg.t_max = 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(integrate(gen, rho0, cfg, times).states.size());
}
BENCHMARK(BM_IntegrateTwoQubitPoles)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
