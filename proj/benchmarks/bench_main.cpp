#include <benchmark/benchmark.h>

#include "loopforge/algebra.hpp"
#include "loopforge/constructions.hpp"

namespace {

using namespace loopforge;

void BM_PaigeLoop(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(PaigeLoop(q).order());
}
BENCHMARK(BM_PaigeLoop)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MoufangExhaustive(benchmark::State& state) {
  auto l = state.range(0) == 0 ? Cml81() : PaigeLoop(2);
  for (auto _ : state) benchmark::DoNotOptimize(CheckMoufangExhaustive(l).ok);
  state.SetLabel(state.range(0) == 0 ? "cml81" : "paige2");
}
BENCHMARK(BM_MoufangExhaustive)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_NormalClosureM3(benchmark::State& state) {
  auto l = PaigeLoop(3);
  Elt x = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(NormalClosure(l, {x}).size());
    x = x % 1079 + 1;
  }
}
BENCHMARK(BM_NormalClosureM3)->Unit(benchmark::kMillisecond);

void BM_NormalLattice(benchmark::State& state) {
  auto l = Cml81();
  for (auto _ : state) benchmark::DoNotOptimize(NormalSubloopLattice(l).size());
}
BENCHMARK(BM_NormalLattice)->Unit(benchmark::kMillisecond);

void BM_AlternatorIdeal(benchmark::State& state) {
  auto l = state.range(0) == 0 ? Cml81() : PaigeLoop(2);
  PrimeField f(state.range(0) == 0 ? 3 : 11);
  LoopAlgebra<PrimeField> fq(f, l);
  for (auto _ : state) benchmark::DoNotOptimize(AlternatorIdeal(fq).dim());
  state.SetLabel(state.range(0) == 0 ? "cml81/gf3" : "paige2/gf11");
}
BENCHMARK(BM_AlternatorIdeal)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OmegaNilpotency(benchmark::State& state) {
  auto fqb = BuildAlternativeLoopAlgebra(PrimeField(3), Cml81());
  auto omega = AugmentationIdeal(fqb, SubloopSet::Whole(81));
  for (auto _ : state) benchmark::DoNotOptimize(AlgebraNilpotencyIndex(*fqb.algebra, omega));
}
BENCHMARK(BM_OmegaNilpotency)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
