// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "stanley/extrema.hpp"
#include "stanley/sequence.hpp"
#include "stanley/series.hpp"

using namespace stanley;

namespace {

const std::vector<double>& terms() {
    static const std::vector<double> a = generate(Seed::two(4), 20000).as_doubles();
    return a;
}

// Rough signal with many local maxima, so the prominence walk has work to do.
const std::vector<double>& noisy() {
    static const std::vector<double> x = [] {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> nd(0, 0.05);
        std::vector<double> v(200000);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(i * 1e-3) + nd(rng);
        return v;
    }();
    return x;
}

void BM_generate(benchmark::State& st, Strategy strategy, bool parallel) {
    GenerateOptions opt;
    opt.strategy = strategy;
    opt.parallel = parallel;
    for (auto _ : st) benchmark::DoNotOptimize(generate(Seed::two(4), st.range(0), opt));
}
BENCHMARK_CAPTURE(BM_generate, bitset_serial, Strategy::bitset_scan, false)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_generate, bitset_parallel, Strategy::bitset_scan, true)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_generate, hash_serial, Strategy::hash_scan, false)->Arg(2000)->Unit(benchmark::kMillisecond);

template <auto Fn>
void BM_windowed(benchmark::State& st) {
    const auto& a = terms();
    for (auto _ : st) benchmark::DoNotOptimize(Fn(a, 20));
}
BENCHMARK(BM_windowed<static_cast<IndexedSeries (*)(std::span<const double>, std::size_t)>(reference::windowed_exponent)>)
    ->Name("windowed/serial");
BENCHMARK(BM_windowed<static_cast<IndexedSeries (*)(std::span<const double>, std::size_t)>(windowed_exponent)>)
    ->Name("windowed/parallel");

template <auto Fn>
void BM_moving_average(benchmark::State& st) {
    const IndexedSeries s("x", 1, noisy());
    const SmoothingConfig cfg(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(Fn(s, cfg));
}
BENCHMARK(BM_moving_average<reference::moving_average>)->Name("moving_average/serial")->Arg(25)->Arg(201);
BENCHMARK(BM_moving_average<moving_average>)->Name("moving_average/parallel")->Arg(25)->Arg(201);

template <auto Fn>
void BM_prominences(benchmark::State& st) {
    const auto& x = noisy();
    const auto peaks = local_maxima(x);
    for (auto _ : st) benchmark::DoNotOptimize(Fn(x, peaks));
    st.counters["peaks"] = static_cast<double>(peaks.size());
}
BENCHMARK(BM_prominences<reference::prominences>)->Name("prominences/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_prominences<prominences>)->Name("prominences/parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
