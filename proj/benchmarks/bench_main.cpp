#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "ultrachirp/dynamics.hpp"
#include "ultrachirp/faddeyeva.hpp"
#include "ultrachirp/signal.hpp"

namespace {

using namespace ultrachirp;

const PulseParams kFig2 = PulseParams::resonant(4.0 * std::sqrt(2.0), 2.0, 10.0 * std::sqrt(2.0));

void BM_Wofz(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<Complex> zs(1024);
    for (auto& z : zs) z = {u(rng), std::abs(u(rng))};
    for (auto _ : state) {
        for (const Complex& z : zs) benchmark::DoNotOptimize(faddeyeva::wofz(z));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(zs.size()));
}
BENCHMARK(BM_Wofz);

void BM_AnalyticSamples(benchmark::State& state) {
    const TimeGrid g{-8.0, 8.0, static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(signal::sample_analytic(kFig2, g));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AnalyticSamples)->Arg(1 << 12)->Arg(1 << 16);

void BM_FftOracle(benchmark::State& state) {
    const TimeGrid g{-8.0, 8.0, static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(signal::analytic_signal_fft_oracle(kFig2, g));
}
BENCHMARK(BM_FftOracle)->Arg(1 << 14)->Arg(1 << 18);

void BM_Evolve(benchmark::State& state) {
    const auto model = static_cast<HamiltonianModel>(state.range(0));
    const PulseParams p = PulseParams::resonant(200.0, 3500.0, 700.0);
    for (auto _ : state) benchmark::DoNotOptimize(dynamics::evolve(model, p, {}));
    state.SetLabel(std::string(to_string(model)));
}
BENCHMARK(BM_Evolve)
    ->Arg(static_cast<int>(HamiltonianModel::exact_ip))
    ->Arg(static_cast<int>(HamiltonianModel::rwa_quadrature))
    ->Arg(static_cast<int>(HamiltonianModel::rwa_analytic))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
