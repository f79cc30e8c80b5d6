// Serial reference loops against the OpenMP kernels on the same inputs.

#include "scatter/representation.hpp"
#include "scatter/scattering.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace scatter;

namespace {

std::vector<double> signal(std::size_t n)
{
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    std::vector<double> x(n);
    for (auto& v : x) v = g(rng);
    return x;
}

void scattering(benchmark::State& state, Exec exec)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = signal(n);
    const auto plan = plan_scattering(n, {2, 10, 2, 10});
    for (auto _ : state) {
        auto c = scattering_transform(x, plan, {exec, false});
        benchmark::DoNotOptimize(c.s2.values().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

void representation(benchmark::State& state, Exec exec, Reducer reducer)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = signal(n);
    const auto plan = plan_scattering(n, {2, 10, 2, 10});
    const auto c = scattering_transform(x, plan, {Exec::parallel, false});
    for (auto _ : state) {
        auto rep = build_transient_rep(c.s2, 2.0, reducer, exec, false);
        benchmark::DoNotOptimize(rep.lx.values().data());
    }
}

}  // namespace

BENCHMARK_CAPTURE(scattering, serial, Exec::serial)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(scattering, parallel, Exec::parallel)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(representation, pca_serial, Exec::serial, Reducer::pca)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(representation, pca_parallel, Exec::parallel, Reducer::pca)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(representation, maxpool_serial, Exec::serial, Reducer::maxpool)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(representation, maxpool_parallel, Exec::parallel, Reducer::maxpool)->Arg(1 << 14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
