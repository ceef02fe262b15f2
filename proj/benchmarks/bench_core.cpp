#include <benchmark/benchmark.h>

#include "narcert/bounds.hpp"
#include "narcert/covers.hpp"
#include "narcert/group.hpp"
#include "narcert/ske.hpp"

using namespace narcert;

static void BM_Lemma32Verify(benchmark::State& state) {
  const auto g = state.range(0);
  for (auto _ : state) {
    const auto c = lemma32_ske(g);
    benchmark::DoNotOptimize(verify_ske(c.signature, c.group, c.images).kernel_genus);
  }
}
BENCHMARK(BM_Lemma32Verify)->Arg(24)->Arg(1000)->Arg(1'000'000);

static void BM_SearchA6(benchmark::State& state) {
  const auto a6 = alternating(6);
  const auto sig = Signature::parse("3,3,4");
  for (auto _ : state) benchmark::DoNotOptimize(search_ske(sig, a6).certificates.size());
}
BENCHMARK(BM_SearchA6)->Unit(benchmark::kMillisecond);

static void BM_CountDihedral(benchmark::State& state) {
  SearchOptions o;
  o.mode = SearchMode::kCount;
  const auto d = FiniteGroup::dihedral(state.range(0));
  const auto sig = Signature::parse("2,2,2,2,2");
  for (auto _ : state) benchmark::DoNotOptimize(search_ske(sig, d, o).count);
}
BENCHMARK(BM_CountDihedral)->Arg(12)->Arg(46)->Unit(benchmark::kMillisecond);

static void BM_HomologyAction(benchmark::State& state) {
  const KernelPresentation kp(kazaz_base(kazaz_case('a')));
  const auto p = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    const HomologyAction h(kp, p);
    benchmark::DoNotOptimize(invariant_hyperplanes(h).size());
  }
}
BENCHMARK(BM_HomologyAction)->Arg(3)->Arg(17)->Unit(benchmark::kMicrosecond);

static void BM_AttainedGenera(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(attained_genera(state.range(0)).size());
}
BENCHMARK(BM_AttainedGenera)->Arg(120)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
