#include <benchmark/benchmark.h>

#include "sususy/beta_ode.hpp"
#include "sususy/scanner.hpp"
#include "sususy/special_functions.hpp"
#include "sususy/spectral.hpp"

using namespace sususy;

namespace {

void BM_Erf(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-4;
        if (x > 6.0) x = -6.0;
        benchmark::DoNotOptimize(erf(x));
    }
}
BENCHMARK(BM_Erf);

void BM_BetaParticular(benchmark::State& state) {
    double x = -5.0;
    for (auto _ : state) {
        x += 1e-3;
        if (x > 5.0) x = -5.0;
        benchmark::DoNotOptimize(beta_particular(2.0, x));
    }
}
BENCHMARK(BM_BetaParticular);

void BM_IntegrateRegular(benchmark::State& state) {
    ScanConfig cfg;
    const ParticularBeta bp(2.0);
    const InitialPoint p = bp.initial_point();
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate(p, cfg));
    }
}
BENCHMARK(BM_IntegrateRegular);

void BM_IntegrateSingular(benchmark::State& state) {
    ScanConfig cfg;
    const InitialPoint p{-0.7, 5.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate(p, cfg));
    }
}
BENCHMARK(BM_IntegrateSingular);

void BM_ThresholdBisect(benchmark::State& state) {
    ScanConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(threshold_bisect(-0.7, Direction::Up, cfg));
    }
}
BENCHMARK(BM_ThresholdBisect);

void BM_LowestEigenvalues(benchmark::State& state) {
    const auto hd = discretize([](double x) { return x * x; }, {-8.0, 8.0},
                               static_cast<int>(state.range(0)), "x^2");
    for (auto _ : state) {
        benchmark::DoNotOptimize(lowest_eigenvalues(hd, 6));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LowestEigenvalues)->Arg(1000)->Arg(2000)->Arg(4000)->Complexity();

void BM_DenseEvaluation(benchmark::State& state) {
    ScanConfig cfg;
    const ParticularBeta bp(2.0);
    const BetaSolution sol = integrate(bp.initial_point(), cfg);
    const SolutionBeta dense(sol);
    double x = -5.0;
    for (auto _ : state) {
        x += 1e-3;
        if (x > 5.0) x = -5.0;
        benchmark::DoNotOptimize(dense.eval(x));
    }
}
BENCHMARK(BM_DenseEvaluation);

}  // namespace

BENCHMARK_MAIN();
