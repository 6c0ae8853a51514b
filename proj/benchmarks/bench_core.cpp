#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "heckebound/bounds.hpp"
#include "heckebound/combination.hpp"
#include "heckebound/density.hpp"
#include "heckebound/optimizer.hpp"
#include "heckebound/qexpansion.hpp"
#include "heckebound/satotate.hpp"

namespace {

using namespace hecke;

CombinationSpec single_spec() {
    CombinationSpec spec;
    spec.lambdas = {{1.0, 0.0}};
    spec.dims = {2};
    spec.pole_orders = {1};
    spec.twist_inequivalent = true;
    spec.shift_t = {0.0, 0.0};
    return spec;
}

const ThresholdLadder& paper_ladder() {
    static const ThresholdLadder ladder{{3, 5, 8, 17, 27, 38, 49, 61}};
    return ladder;
}

void BM_objective_eval(benchmark::State& state) {
    const CombinationSpec spec = single_spec();
    const DerivedConstants d = derived_constants(spec);
    std::vector<double> env;
    for (double x : paper_ladder().cutoffs) env.push_back(d.envelope(x));
    Allocation alloc;
    alloc.tail_y = 0.017;
    alloc.ladder_y = {0.85, 0.078, 0.055, 1.2e-4, 1.2e-5, 2.4e-6, 8e-7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gl2_objective_with_envelopes(
            d.A, d.T, env, paper_ladder().cutoffs, alloc));
    }
}
BENCHMARK(BM_objective_eval);

void BM_inner_solve(benchmark::State& state) {
    const CombinationSpec spec = single_spec();
    for (auto _ : state) {
        benchmark::DoNotOptimize(minimize_allocation(spec, paper_ladder()));
    }
}
BENCHMARK(BM_inner_solve);

void BM_ladder_eval(benchmark::State& state) {
    const CombinationSpec spec = single_spec();
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_ladder(spec, paper_ladder()));
    }
}
BENCHMARK(BM_ladder_eval);

void BM_delta_generation(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_coefficients(n));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_delta_generation)->Arg(2000)->Arg(10000)->Complexity();

void BM_density_scan(benchmark::State& state) {
    const CoefficientTable table = delta_coefficients(20000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sign_density({&table}, {1.0}, 0.0, PrimeFilter::all(), 20000));
    }
}
BENCHMARK(BM_density_scan);

void BM_satake_sampling(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sato_tate_sample(state.range(0), 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_satake_sampling)->Arg(1 << 16)->Arg(1 << 18);

}  // namespace

BENCHMARK_MAIN();
