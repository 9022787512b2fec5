#include <benchmark/benchmark.h>

#include "walg/sweep.hpp"

using namespace walg;

namespace {

const SweepRange kRange{HalfInt(1), HalfInt(5), 8};

void BM_RepresentationSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::representation_sweep(kRange));
}
void BM_RepresentationParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parallel::representation_sweep(kRange));
}

void BM_NTableSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::n_table(kRange));
}
void BM_NTableParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parallel::n_table(kRange));
}

void BM_JacobiSerial(benchmark::State& state) {
  const auto reg = CouplingRegistry::unit();
  JacobiSweepOptions o;
  o.q_max = HalfInt(3);
  for (auto _ : state) benchmark::DoNotOptimize(serial::jacobi_sweep(o, reg));
}
void BM_JacobiParallel(benchmark::State& state) {
  const auto reg = CouplingRegistry::unit();
  JacobiSweepOptions o;
  o.q_max = HalfInt(3);
  for (auto _ : state) benchmark::DoNotOptimize(parallel::jacobi_sweep(o, reg));
}

void BM_RoundtripSerial(benchmark::State& state) {
  const auto reg = CouplingRegistry::unit();
  for (auto _ : state) benchmark::DoNotOptimize(serial::roundtrip_sweep(HalfInt(4), 2, reg));
}
void BM_RoundtripParallel(benchmark::State& state) {
  const auto reg = CouplingRegistry::unit();
  for (auto _ : state) benchmark::DoNotOptimize(parallel::roundtrip_sweep(HalfInt(4), 2, reg));
}

}  // namespace

BENCHMARK(BM_RepresentationSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RepresentationParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_NTableSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NTableParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_JacobiSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobiParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RoundtripSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RoundtripParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
