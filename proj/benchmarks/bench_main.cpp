#include <benchmark/benchmark.h>

#include <cstdint>

#include "entsearch/copies.hpp"
#include "entsearch/detect.hpp"
#include "entsearch/formula.hpp"
#include "entsearch/oracle.hpp"
#include "entsearch/qsim.hpp"
#include "entsearch/search.hpp"

namespace {

using namespace entsearch;

void BM_OracleApply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Formula f = planted_formula(n, (std::uint64_t{1} << n) / 3);
    const RegisterLayout layout = RegisterLayout::minimal(n);
    const RangeOracle oracle = RangeOracle::make(f, 0, (std::uint64_t{1} << n) - 1, layout);
    const PureState psi = uniform_superposition(layout);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_oracle(oracle, psi));
    }
    state.SetComplexityN(std::int64_t{1} << n);
}
BENCHMARK(BM_OracleApply)->DenseRange(6, 16, 2)->Complexity(benchmark::oN);

void BM_AnswerMarginal(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Formula f = planted_formula(n, 1);
    const PureState psi =
        post_oracle_state(f, 0, (std::uint64_t{1} << n) - 1, RegisterLayout::minimal(n));
    for (auto _ : state) {
        benchmark::DoNotOptimize(final_qubit_marginal(psi));
    }
}
BENCHMARK(BM_AnswerMarginal)->DenseRange(6, 16, 2);

void BM_PartialTrace(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Formula f = planted_formula(n, 0);
    const DensityOp rho = density_from_state(
        post_oracle_state(f, 0, (std::uint64_t{1} << n) - 1, RegisterLayout::minimal(n)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace(rho, Subsystem::answer));
    }
}
BENCHMARK(BM_PartialTrace)->DenseRange(4, 10, 2);

void BM_PptTest(benchmark::State& state) {
    const Formula f = parse_expr("(x1 & x2) | x3");
    const DensityOp rho = density_from_state(
        post_oracle_state(f, 0, 7, RegisterLayout::dxd(3)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ppt_test(rho));
    }
}
BENCHMARK(BM_PptTest);

void BM_GuidedSearch(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Formula f = planted_formula(n, (std::uint64_t{1} << n) - 1);
    SearchConfig cfg;
    cfg.route = Route::analytic;
    for (auto _ : state) {
        benchmark::DoNotOptimize(search(f, cfg));
    }
}
BENCHMARK(BM_GuidedSearch)->DenseRange(4, 16, 4);

void BM_ClassicalBaseline(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Formula f = planted_formula(n, (std::uint64_t{1} << n) - 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(classical_baseline(f));
    }
}
BENCHMARK(BM_ClassicalBaseline)->DenseRange(4, 16, 4);

void BM_Figure2Grid(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(figure2_grid());
    }
}
BENCHMARK(BM_Figure2Grid);

} // namespace

BENCHMARK_MAIN();
