// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "clm/abelian.hpp"
#include "clm/lln.hpp"
#include "clm/lseries.hpp"
#include "clm/measure.hpp"
#include "clm/quadforms.hpp"

namespace {

using namespace clm;

void BM_BuildTable(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_table(1, state.range(0)));
}
void BM_BuildTableSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_table_serial(1, state.range(0)));
}
BENCHMARK(BM_BuildTable)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildTableSerial)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);

DirichletCoefficients ones(std::uint64_t bound) {
    DirichletCoefficients d = dirichlet_one(bound, 4);
    for (std::uint64_t n = 1; n <= bound; ++n) d.c[n] = CycloElement::zeta_power(4, static_cast<std::int64_t>(n % 4));
    return d;
}

void BM_Convolve(benchmark::State& state) {
    const auto a = ones(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dirichlet_convolve(a, a));
}
void BM_ConvolveSerial(benchmark::State& state) {
    const auto a = ones(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dirichlet_convolve_serial(a, a));
}
BENCHMARK(BM_Convolve)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveSerial)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

ClmMeasure sampler_measure() {
    const GroupSpec g = build_group({4});
    const auto comps = components(g);
    std::map<int, unsigned> ranks;
    for (const auto& c : comps) ranks[c.id] = 1;
    return make_measure(g, comps, {3, 5, 7, 11, 13}, ranks);
}

void BM_SampleShapes(benchmark::State& state) {
    const ClmMeasure m = sampler_measure();
    for (auto _ : state) benchmark::DoNotOptimize(sample_shapes(m, 1, static_cast<std::size_t>(state.range(0))));
}
void BM_SampleShapesSerial(benchmark::State& state) {
    const ClmMeasure m = sampler_measure();
    for (auto _ : state) benchmark::DoNotOptimize(sample_shapes_serial(m, 1, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_SampleShapes)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleShapesSerial)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_BoundedSuite(benchmark::State& state) {
    const GeometricDist g(Rational(1, 2));
    const Stream s = sample_stream(g, static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(bounded_suite(s, g, 7));
}
void BM_BoundedSuiteSerial(benchmark::State& state) {
    const GeometricDist g(Rational(1, 2));
    const Stream s = sample_stream(g, static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(bounded_suite_serial(s, g, 7));
}
BENCHMARK(BM_BoundedSuite)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundedSuiteSerial)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
