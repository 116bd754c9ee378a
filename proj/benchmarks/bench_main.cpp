// SPDX-License-Identifier: MIT
#include "jh/closed_forms.hpp"
#include "jh/constructors.hpp"
#include "jh/duality.hpp"
#include "jh/numeric.hpp"
#include "jh/operators.hpp"

#include <benchmark/benchmark.h>

using namespace jh;
using i64 = std::int64_t;

namespace {

// Cold: each iteration builds a fresh lazy table and resolves one key.
void BM_ThetaLookupCold(benchmark::State& st) {
    auto keys = supported_keys2(1, st.range(0));
    std::size_t i = 0;
    for (auto _ : st) {
        CoeffTable t = theta_table(e8_lattice(2), 2, st.range(0));
        benchmark::DoNotOptimize(t.lookup(keys[i]));
        i = (i + 1) % keys.size();
    }
}
BENCHMARK(BM_ThetaLookupCold)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_ThetaLookupWarm(benchmark::State& st) {
    CoeffTable t = theta_table(e8_lattice(2), 2, st.range(0)).materialize();
    auto keys = supported_keys2(1, st.range(0));
    std::size_t i = 0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(t.lookup(keys[i]));
        i = (i + 1) % keys.size();
    }
}
BENCHMARK(BM_ThetaLookupWarm)->Arg(40)->Arg(80);

void BM_OpUp(benchmark::State& st) {
    CoeffTable t = theta_table(e8_lattice(2), 2, st.range(0)).materialize();
    for (auto _ : st) benchmark::DoNotOptimize(op_up(t, 3).materialize());
}
BENCHMARK(BM_OpUp)->Arg(72)->Arg(144)->Unit(benchmark::kMillisecond);

void BM_ClosedUp(benchmark::State& st) {
    CoeffTable t = theta_table(e8_lattice(2), 2, st.range(0)).materialize();
    for (auto _ : st) benchmark::DoNotOptimize(closed_up(t, 3).materialize());
}
BENCHMARK(BM_ClosedUp)->Arg(72)->Arg(144)->Unit(benchmark::kMillisecond);

void BM_SolveDualitySpace(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(solve_duality_space_classes(4, 1, 3, st.range(0)));
}
BENCHMARK(BM_SolveDualitySpace)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_SlashNumeric(benchmark::State& st) {
    std::mt19937_64 rng(7);
    EvalPoint x = random_point(2, rng);
    JacobiElement g = random_integral_element(2, rng);
    NumericFn f = [](const EvalPoint& y) { return psi_eval(y, 4, 1); };
    for (auto _ : st) benchmark::DoNotOptimize(slash_numeric(f, g, x, 4, 1));
}
BENCHMARK(BM_SlashNumeric);

}  // namespace

BENCHMARK_MAIN();
