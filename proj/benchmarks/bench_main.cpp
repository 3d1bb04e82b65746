#include <benchmark/benchmark.h>

#include <btcert/bounds.hpp>
#include <btcert/legendre.hpp>
#include <btcert/mertens.hpp>
#include <btcert/prime_count.hpp>

using namespace btcert;

// Q = 2*3*5*7*11*13 against modulus 17, z up to 1e12.
static void BM_SieveCount(benchmark::State& state) {
    const Rational z(static_cast<long long>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sieve_count(z, 17, 3, 30030));
}
BENCHMARK(BM_SieveCount)->RangeMultiplier(1000)->Range(1000, 1000000000000LL);

static void BM_ExtremalConstants(benchmark::State& state) {
    const auto r = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(extremal_constants(1, r));
}
BENCHMARK(BM_ExtremalConstants)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

static void BM_RemainderScan(benchmark::State& state) {
    const auto t_hi = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(scan_remainder_sup(1, 1, t_hi));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RemainderScan)->RangeMultiplier(10)->Range(10000, 10000000)->Unit(benchmark::kMillisecond);

static void BM_PiAp(benchmark::State& state) {
    const auto y = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pi_ap({1000000000000ULL - y, y, 4, 1}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PiAp)->RangeMultiplier(10)->Range(100000, 100000000)->Unit(benchmark::kMillisecond);

static void BM_SimpleBound(benchmark::State& state) {
    const Rational xi = Rational::parse("0.8601");
    for (auto _ : state) benchmark::DoNotOptimize(simple_bound(1, Rational(1000000), xi));
}
BENCHMARK(BM_SimpleBound);
BENCHMARK_MAIN();
