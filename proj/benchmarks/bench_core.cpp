#include <benchmark/benchmark.h>

#include <random>

#include "sproof/report.hpp"
#include "sproof/verifier.hpp"

using namespace sproof;

namespace {

IMatrix random_imatrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = g(rng);
    return IMatrix::from_mid_rad(m, Eigen::MatrixXd::Constant(n, n, 1e-12));
}

SpectralFn emden_u(int n) {
    const Nonlinearity f = Nonlinearity::emden();
    return enclose_approx(f, galerkin_approx(f, n));
}

}  // namespace

static void BM_IntervalGemm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const IMatrix a = random_imatrix(n, 1), b = random_imatrix(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_IntervalGemm)->Arg(100)->Arg(400);

static void BM_IntervalGemmNaive(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const IMatrix a = random_imatrix(n, 1), b = random_imatrix(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(matmul_naive(a, b));
}
BENCHMARK(BM_IntervalGemmNaive)->Arg(100);

static void BM_WeightedGram(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SpectralFn u = emden_u(n);
    for (auto _ : state) benchmark::DoNotOptimize(weighted_gram(u, n));
}
BENCHMARK(BM_WeightedGram)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_LinfBound(benchmark::State& state) {
    const PSeries2 p = emden_u(static_cast<int>(state.range(0))).to_p();
    for (auto _ : state) benchmark::DoNotOptimize(linf_ub(p));
}
BENCHMARK(BM_LinfBound)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_PipelineN10(benchmark::State& state) {
    RunConfig c;
    c.n = 10;
    for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(c));
}
BENCHMARK(BM_PipelineN10)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK_MAIN();
