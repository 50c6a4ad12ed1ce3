#include <benchmark/benchmark.h>

#include "heckelab/hecke.hpp"
#include "heckelab/heights.hpp"
#include "heckelab/lattices.hpp"
#include "heckelab/numerics.hpp"
#include "heckelab/scan.hpp"

using namespace heckelab;

static void BM_EvalJ(benchmark::State& state) {
  const Precision prec(static_cast<unsigned>(state.range(0)));
  const UpperHalfPoint tau(0.31, 1.07, prec.bits);
  for (auto _ : state) benchmark::DoNotOptimize(eval_j(tau, prec));
}
BENCHMARK(BM_EvalJ)->Arg(128)->Arg(512)->Arg(2048)->Arg(8192);

static void BM_HeckeOrbit(benchmark::State& state) {
  const UpperHalfPoint tau(0.3, 1.7);
  for (auto _ : state) benchmark::DoNotOptimize(hecke_orbit(tau, state.range(0)));
}
BENCHMARK(BM_HeckeOrbit)->Arg(101)->Arg(997)->Unit(benchmark::kMillisecond);

static void BM_PhiValue(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(phi_value(1, 2, state.range(0)));
}
BENCHMARK(BM_PhiValue)->Arg(11)->Arg(53)->Unit(benchmark::kMillisecond);

static void BM_CountPoints(benchmark::State& state) {
  const CurveQ curve(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(count_points(curve, state.range(0)));
}
BENCHMARK(BM_CountPoints)->Arg(101)->Arg(9973)->Arg(99991);

static void BM_BallCount(benchmark::State& state) {
  const GramForm form = GramForm::diagonal(4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ball_count(form, state.range(0)));
}
BENCHMARK(BM_BallCount)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
