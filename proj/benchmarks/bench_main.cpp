#include <benchmark/benchmark.h>

#include "asymp/methods_bvp.hpp"
#include "asymp/methods_osc.hpp"
#include "asymp/oracle.hpp"
#include "asymp/trig_poly.hpp"

using namespace asymp;

static void BM_TrigPower(benchmark::State& state) {
  const auto u = TrigPoly::cosine(1.0, 1.0) + TrigPoly::cosine(1.0, 0.01, 3) + TrigPoly::sine(1.0, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(power(u, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_TrigPower)->Arg(3)->Arg(5)->Arg(9);

static void BM_VimSolve(benchmark::State& state) {
  const auto spec = std::get<OscillatorSpec>(make_problem("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}));
  for (auto _ : state) benchmark::DoNotOptimize(vim_solve(spec, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_VimSolve)->DenseRange(1, 3);

static void BM_OraclePeriod(benchmark::State& state) {
  const auto spec = std::get<OscillatorSpec>(make_problem("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::oscillator_period(spec, 1.0));
}
BENCHMARK(BM_OraclePeriod)->Unit(benchmark::kMillisecond);

static void BM_RitzBratu(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ritz_bratu(1.0));
}
BENCHMARK(BM_RitzBratu)->Unit(benchmark::kMillisecond);

static void BM_ShootBratu(benchmark::State& state) {
  const auto spec = std::get<BvpSpec>(make_problem("bratu", {{"lambda", 1.0}}));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::shoot_bvp(spec));
}
BENCHMARK(BM_ShootBratu)->Unit(benchmark::kMillisecond);

static void BM_BvtSolve(benchmark::State& state) {
  const auto spec = std::get<BvpSpec>(make_problem("singular_linear", {{"eps", 0.01}}));
  for (auto _ : state) benchmark::DoNotOptimize(bvt_solve(spec));
}
BENCHMARK(BM_BvtSolve)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
