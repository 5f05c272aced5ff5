#include <benchmark/benchmark.h>

#include <random>

#include "phiset/phiset.hpp"

using namespace phiset;

namespace {

FinSpace random_space(std::size_t n, std::mt19937_64& rng) {
  std::vector<SubsetMask> sub;
  for (std::size_t i = 0; i < n; ++i) sub.emplace_back(n, rng() & full_bits(n));
  return FinSpace::generate(n, sub);
}

void BM_AllTopologies(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(all_topologies(n));
}
BENCHMARK(BM_AllTopologies)->DenseRange(2, 5);

void BM_GenerateSpace(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(random_space(n, rng));
}
BENCHMARK(BM_GenerateSpace)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_ZeroSets(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const FinSpace space = random_space(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(zero_sets(space));
}
BENCHMARK(BM_ZeroSets)->Arg(8)->Arg(16);

void BM_CompiledEvaluate(benchmark::State& state) {
  const Base base = a_operation_base(2, static_cast<std::size_t>(state.range(0)));
  const CompiledBase cb(base, EvalMode::prefix);
  std::mt19937_64 rng(3);
  std::vector<Bits> slots(cb.slot_count());
  for (auto& s : slots) s = rng() & full_bits(16);
  for (auto _ : state) benchmark::DoNotOptimize(cb.evaluate(slots, full_bits(16)));
}
BENCHMARK(BM_CompiledEvaluate)->DenseRange(1, 4);

void BM_GenerateClass(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const FinSpace space = random_space(4, rng);
  const SetClass opens = open_sets(space);
  const Base base = a_operation_base(2, 2);
  const EvalMode mode = state.range(0) == 0 ? EvalMode::prefix : EvalMode::range;
  for (auto _ : state) benchmark::DoNotOptimize(generate_class(base, opens, mode));
}
BENCHMARK(BM_GenerateClass)->Arg(0)->Arg(1);

void BM_AlgEnumerate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::size_t> table(n);
  for (std::size_t i = 0; i < n; ++i) table[i] = i % 8;
  const PointMap f(FinSpace::discrete(n), FinSpace::discrete(8), table);
  for (auto _ : state) benchmark::DoNotOptimize(alg_enumerate(f));
}
BENCHMARK(BM_AlgEnumerate)->Arg(8)->Arg(16);

void BM_CheckReduction(benchmark::State& state) {
  const SetClass cls = SetClass::power_set(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_reduction(cls));
}
BENCHMARK(BM_CheckReduction)->DenseRange(2, 5);

void BM_Transfer(benchmark::State& state) {
  const PointMap f(FinSpace::discrete(4), FinSpace::discrete(3), {0, 1, 1, 2});
  const SetClass gy = SetClass::power_set(3);
  const SetClass gx = preimage_class(f, gy);
  const Base base = union_base(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(transfer_property(f, base, gx, gy, EvalMode::range, Property::reduction));
  }
}
BENCHMARK(BM_Transfer);

}  // namespace
BENCHMARK_MAIN();
