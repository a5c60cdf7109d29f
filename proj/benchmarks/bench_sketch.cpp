#include <benchmark/benchmark.h>

#include <random>

#include "motifsketch/estimator.hpp"
#include "motifsketch/sketch.hpp"

using namespace motifsketch;

namespace {

const std::vector<EdgeEvent>& bench_stream() {
  static const auto events = [] {
    GenerateOptions o;
    o.nodes = 2000;
    o.edges = 8000;
    o.max_degree = 16;
    o.seed = 1;
    return generate_stream(o);
  }();
  return events;
}

}  // namespace

// Per-edge update cost; range(0) = d. Algorithm 2 should stay flat in d.
static void BM_UpdateAccumulators(benchmark::State& state) {
  const auto d = static_cast<std::uint32_t>(state.range(0));
  const auto& events = bench_stream();
  for (auto _ : state) {
    Sketch s(SketchConfig{builtin_pattern("cycle4"), GroupSpec::signed_powers(d), 8, Algorithm::Accumulators, 7});
    s.update(events);
    benchmark::DoNotOptimize(s.accumulators().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(events.size()));
}
BENCHMARK(BM_UpdateAccumulators)->RangeMultiplier(4)->Range(2, 128);

static void BM_UpdateCounters(benchmark::State& state) {
  const auto d = static_cast<std::uint32_t>(state.range(0));
  const auto& events = bench_stream();
  for (auto _ : state) {
    Sketch s(SketchConfig{builtin_pattern("cycle4"), GroupSpec::signed_powers(d), 8, Algorithm::Counters, 7});
    s.update(events);
    benchmark::DoNotOptimize(s.counters().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(events.size()));
}
BENCHMARK(BM_UpdateCounters)->RangeMultiplier(4)->Range(2, 128);

// Batched updates hash each distinct vertex once per block.
static void BM_UpdateCountersBlocked(benchmark::State& state) {
  const auto& events = bench_stream();
  EventBlock block;
  for (const auto& e : events) block.add(e);
  for (auto _ : state) {
    Sketch s(SketchConfig{builtin_pattern("cycle4"), GroupSpec::signed_powers(8), 8, Algorithm::Counters, 7});
    s.update(block);
    benchmark::DoNotOptimize(s.counters().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(events.size()));
}
BENCHMARK(BM_UpdateCountersBlocked);

// Finalize cost over C; naive is O(C^4 d) for the 4-cycle, the fast path O(C^3 d).
static void finalize_bench(benchmark::State& state, Finalizer f) {
  const auto colors = static_cast<std::uint32_t>(state.range(0));
  Sketch s(SketchConfig{builtin_pattern("cycle4"), GroupSpec::signed_powers(4), colors, Algorithm::Counters, 3});
  s.update(bench_stream());
  for (auto _ : state) benchmark::DoNotOptimize(s.finalize_detailed(f).value);
}
static void BM_FinalizeNaive(benchmark::State& state) { finalize_bench(state, Finalizer::Naive); }
static void BM_FinalizeCycle4(benchmark::State& state) { finalize_bench(state, Finalizer::Cycle4); }
BENCHMARK(BM_FinalizeNaive)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FinalizeCycle4)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMicrosecond);

// One element hash: a degree-(4k-1) polynomial over GF(2^61 - 1); range(0) = k.
static void BM_HashEval(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto h = PolynomialHash::from_seed(11, 1, 4 * k, 16);
  std::uint64_t key = 12345, acc = 0;
  for (auto _ : state) {
    acc ^= h(key++);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_HashEval)->DenseRange(3, 6);

BENCHMARK_MAIN();
