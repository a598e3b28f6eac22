// Serial reference vs OpenMP path for each scanning kernel.
// Argument 0 runs Exec::serial, 1 runs Exec::parallel.
#include <benchmark/benchmark.h>

#include "ellroot/analytics.hpp"
#include "ellroot/sieve.hpp"

using namespace ellroot;

namespace {

ExecConfig mode(const benchmark::State& st) {
    return st.range(0) ? ExecConfig{Exec::parallel, 0} : ExecConfig{Exec::serial, 1};
}

const EllipticSurface& running() {
    static const EllipticSurface S = new_surface(RatPoly::from_ints({0, 1}), RatPoly::from_ints({0, 1}));
    return S;
}

void BM_scan_fibers(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(scan_fibers(running(), 40, mode(st)).size());
}

void BM_verify_decomposition(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(verify_decomposition(running(), 30, {}, mode(st)).tested);
}

void BM_local_constancy(benchmark::State& st) {
    auto R = sign_region_form(running());
    for (auto _ : st) benchmark::DoNotOptimize(verify_local_constancy(running(), 24, R, 200, {}, mode(st)).samples_tested);
}

void BM_sfl_enumerate(benchmark::State& st) {
    SieveSpec sp;
    sp.f = BinaryForm(1, {27, 4});
    sp.g = BinaryForm::U();
    sp.S = {2, 3};
    sp.t = {0, 0};
    sp.t2 = {0, 0};
    sp.N = 24;
    sp.a = 1;
    sp.b = 1;
    sp.eps = -1;
    SieveOptions so;
    so.max_box = 2000;
    for (auto _ : st) benchmark::DoNotOptimize(sfl_enumerate(sp, 100000, so, mode(st)).hits);
}

void BM_count_sqf(benchmark::State& st) {
    auto f = ArithPoly::binary(BinaryForm(2, {1, 0, 1}));
    for (auto _ : st) benchmark::DoNotOptimize(count_sqf(f, Progression::all(2), 400, 1000, mode(st)).count);
}

void BM_chowla_sum(benchmark::State& st) {
    auto f = ArithPoly::binary(BinaryForm(1, {27, 4}));
    for (auto _ : st) benchmark::DoNotOptimize(chowla_sum(f, Progression::all(2), 600, {}, mode(st)));
}

void BM_square_divisors(benchmark::State& st) {
    auto f = ArithPoly::binary(BinaryForm(2, {0, 1, 0}));
    for (auto _ : st) benchmark::DoNotOptimize(square_divisor_counts(f, {31, 37, 41}, 1000, mode(st)).K_max);
}

}  // namespace

BENCHMARK(BM_scan_fibers)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_decomposition)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_local_constancy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sfl_enumerate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_sqf)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_chowla_sum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_square_divisors)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
