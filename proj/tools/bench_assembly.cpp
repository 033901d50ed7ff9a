// Serial vs OpenMP: shape evaluation at quadrature points and weak-form assembly.
#include <benchmark/benchmark.h>

#include "hpcloud/assembly.hpp"

using namespace hpcloud;

namespace {

struct Setup {
    CloudBasis basis;
    QuadratureRule quad;
    explicit Setup(int n)
        : basis(generate_grid({n, 0.0, 100.0, 1e-5, 2.2}), sto_default_basis()),
          quad(build_quadrature(basis.grid(), 10)) {}
};

void BM_EvaluatePoints(benchmark::State& state, Execution ex) {
    const Setup s(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_points(s.basis, s.quad, {DerivativeMode::pointwise, ex}));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(s.quad.total_points()));
}

void BM_AssembleWeakForm(benchmark::State& state, Execution ex) {
    const Setup s(static_cast<int>(state.range(0)));
    const PhysicalSystem sys;
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_weak_form(s.basis, sys, s.quad, {DerivativeMode::pointwise, ex}));
}

}  // namespace

BENCHMARK_CAPTURE(BM_EvaluatePoints, serial, Execution::serial)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EvaluatePoints, openmp, Execution::openmp)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AssembleWeakForm, serial, Execution::serial)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AssembleWeakForm, openmp, Execution::openmp)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
