#include <benchmark/benchmark.h>

#include <cmath>

#include "epstein/critical_zeros.hpp"
#include "epstein/epstein_zeta.hpp"
#include "epstein/quadrature.hpp"
#include "epstein/special_functions.hpp"
#include "epstein/theta_kernel.hpp"

using namespace epstein;

static void BM_Theta3(benchmark::State& state) {
    double x = 0.37;
    for (auto _ : state) {
        benchmark::DoNotOptimize(theta3(x));
    }
}
BENCHMARK(BM_Theta3);

static void BM_Kernel(benchmark::State& state) {
    double t = 0.2, delta = 0.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(theta_kernel(t, delta));
    }
}
BENCHMARK(BM_Kernel);

static void BM_KernelDerivative(benchmark::State& state) {
    double t = 0.2, delta = 0.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(theta_kernel_ddelta(t, delta));
    }
}
BENCHMARK(BM_KernelDerivative);

static void BM_ComplexGamma(benchmark::State& state) {
    Complex s(0.5, 14.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(complex_gamma(s));
    }
}
BENCHMARK(BM_ComplexGamma);

static void BM_RiemannZeta(benchmark::State& state) {
    Complex s(0.5, static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(riemann_zeta(s));
    }
}
BENCHMARK(BM_RiemannZeta)->Arg(2)->Arg(14)->Arg(40);

static void BM_KernelIntegral(benchmark::State& state) {
    WeightSpec w{-0.5, 0, Trig::cos, static_cast<double>(state.range(0)), Hyp::one, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_kernel(w, 0.62, {}));
    }
}
BENCHMARK(BM_KernelIntegral)->Arg(1)->Arg(8)->Arg(20);

static void BM_CriticalResidual(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(critical_residual(11.16, 0.378));
    }
}
BENCHMARK(BM_CriticalResidual);

static void BM_RefineCriticalZero(benchmark::State& state) {
    double delta = 1.0 / std::sqrt(7.0);
    Bracket b{1.10, 1.15};
    for (auto _ : state) {
        benchmark::DoNotOptimize(refine_critical(b, delta));
    }
}
BENCHMARK(BM_RefineCriticalZero);

static void BM_SolveEdge(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_edge(0.7984, 9.1748));
    }
}
BENCHMARK(BM_SolveEdge);

BENCHMARK_MAIN();
