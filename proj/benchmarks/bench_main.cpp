#include <benchmark/benchmark.h>

#include "vncap/analysis.hpp"
#include "vncap/depolarizing.hpp"

using namespace vncap;

static void BM_HermitianEigenvalues(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    const auto u = random_unitary(n, rng);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<double>(i + 1);
    const auto m = u * ComplexMatrix::diagonal(d) * u.adjoint();
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigenvalues(m));
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_RunDepolarizingDilation(benchmark::State& state) {
    const auto s = build_dilation({0.3, 0.25});
    for (auto _ : state) benchmark::DoNotOptimize(run_on_purification(s.channel, s.initial_qr));
}
BENCHMARK(BM_RunDepolarizingDilation);

static void BM_AnalyticTranscript(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(analytic_transcript({0.3, 0.25}));
}
BENCHMARK(BM_AnalyticTranscript);

static void BM_AuditTrial(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(audit_inequalities(seed++, 1));
}
BENCHMARK(BM_AuditTrial)->Unit(benchmark::kMillisecond);

static void BM_HammingTable(benchmark::State& state) {
    const std::size_t n[] = {50, 100, 200, 400, 800};
    for (auto _ : state)
        benchmark::DoNotOptimize(asymptotic_consistency(0.1, n, HammingMode::Entanglement));
}
BENCHMARK(BM_HammingTable)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
