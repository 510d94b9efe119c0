// Serial reference kernels against their OpenMP counterparts.
// Argument 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include "bpops/bp_hopf.hpp"
#include "bpops/ktheory_lattice.hpp"
#include "bpops/op_calculus.hpp"
#include "bpops/truncation_centre.hpp"

using namespace bpops;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

const EtaRTable& table(std::uint64_t w) {
  static const EtaRTable t = EtaRTable::build(Prime(3), 20);
  if (w > t.max_weight()) throw std::out_of_range("bench table bound");
  return t;
}

void BM_PolyPower(benchmark::State& state) {
  const auto& v2 = table(20).eta({0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(power(v2, 5, mode(state)));
}
BENCHMARK(BM_PolyPower)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TableBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(EtaRTable::build(Prime(3), 20, mode(state)));
}
BENCHMARK(BM_TableBuild)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RealizeWeight(benchmark::State& state) {
  const auto& t = table(20);
  for (auto _ : state) benchmark::DoNotOptimize(realize_weight(20, t, mode(state)));
}
BENCHMARK(BM_RealizeWeight)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CentreCommutant(benchmark::State& state) {
  const auto& t = table(20);
  for (auto _ : state) benchmark::DoNotOptimize(centre_commutant(16, 2, t, mode(state)));
}
BENCHMARK(BM_CentreCommutant)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DiagonalLattice(benchmark::State& state) {
  const auto& t = table(20);
  for (auto _ : state) benchmark::DoNotOptimize(diagonal_window_lattice(8, 1, t, mode(state)));
}
BENCHMARK(BM_DiagonalLattice)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SgWindow(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sg_window(8, Prime(3), {}, mode(state)));
}
BENCHMARK(BM_SgWindow)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
